#include "hyperword/experiments.hpp"
#include "hyperword/json_io.hpp"
#include "hyperword/spd.hpp"
#include "hyperword/tessellation.hpp"
#include "hyperword/words.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace hyperword;

namespace {

// --gamma takes a file path or inline JSON.
json load_json(const std::string& arg) {
  auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return json::parse(arg);
  std::ifstream in(arg);
  if (!in) throw std::runtime_error("cannot open " + arg);
  return json::parse(in);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

const char* step_name(Step s) {
  switch (s) {
    case Step::u: return "u";
    case Step::u_inv: return "u^-1";
    case Step::v: return "v";
  }
  return "?";
}

json letters_json(const Word& w, const GeneratorSet& gens) {
  json out = json::array();
  for (const auto& l : w.letters) out.push_back(gens[l.gen].name + (l.exp < 0 ? "^-1" : ""));
  return out;
}

constexpr std::size_t kMaxListedTiles = 10000;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyperword: hyperbolic models, the modular tessellation and word metrics on PSL(d,Z)"};
  app.require_subcommand(1);
  bool ok = true;

  // convert
  auto* convert = app.add_subcommand("convert", "Convert a point between the H, D, B and U models");
  std::string from = "U", to = "B", point;
  convert->add_option("--from", from, "Source model H|D|B|U")->required();
  convert->add_option("--to", to, "Target model H|D|B|U")->required();
  convert->add_option("--point", point, "Coordinates as a JSON array, or a tagged point object")->required();
  convert->callback([&] {
    Vec<double> x = coords_from_json(json::parse(point));
    Vec<double> y = convert_point(parse_model(from), parse_model(to), x);
    std::cout << point_to_json(parse_model(to), y).dump() << '\n';
  });

  // dr
  auto* dr = app.add_subcommand("dr", "Geometric distance d_R(1, gamma) in the SPD space");
  std::string gamma_arg, base_arg;
  dr->add_option("--gamma", gamma_arg, "Matrix JSON (file or inline)")->required();
  dr->add_option("--base", base_arg, "SPD base point JSON (default: the built-in base)");
  dr->callback([&] {
    ExactMatrix g = matrix_from_json(load_json(gamma_arg));
    PslElement id(ExactMatrix::identity(g.dim())), pg(g);
    SpdPoint<double> base = base_arg.empty() ? default_base(g.dim()) : spd_from_json(load_json(base_arg));
    double d = geometric_distance(id, pg, base);
    ok = ok && std::isfinite(d) && d >= 0;
    std::cout << json{{"d_R", d}, {"base", spd_to_json(base)}}.dump() << '\n';
  });

  // tessellate-svg
  auto* tess = app.add_subcommand("tessellate-svg", "Draw the tiles gamma T near a strip of the half-plane");
  double re_min = -2, re_max = 2;
  int depth = 6;
  std::string svg_out, svg_gamma;
  tess->add_option("--re-min", re_min, "Left edge")->capture_default_str();
  tess->add_option("--re-max", re_max, "Right edge")->capture_default_str();
  tess->add_option("--depth", depth, "Word length bound for the tiles")->capture_default_str();
  tess->add_option("--gamma", svg_gamma, "Also draw the geodesic from 2i to gamma(2i)");
  tess->add_option("--out", svg_out, "Output file (default stdout)");
  tess->callback([&] {
    auto tiles = tiles_in_region(re_min, re_max, depth);
    SvgRegion region;
    region.re_min = re_min;
    region.re_max = re_max;
    std::optional<std::pair<Complex, Complex>> geo;
    if (!svg_gamma.empty()) geo = std::make_pair(p0, act_on(matrix_from_json(load_json(svg_gamma)), p0));
    write_text(svg_out, svg_emit(region, &tiles, geo));
  });

  // trace
  auto* trace = app.add_subcommand("trace", "Tiles and word along the geodesic from 2i to gamma(2i)");
  std::string trace_gamma;
  trace->add_option("--gamma", trace_gamma, "2x2 matrix JSON (file or inline)")->required();
  trace->callback([&] {
    ExactMatrix g = matrix_from_json(load_json(trace_gamma));
    if (g.dim() != 2) throw std::invalid_argument("trace needs a 2x2 matrix");
    auto steps = trace_steps(g);
    BigInt count = 1;
    json runs = json::array();
    for (const auto& s : steps) {
      count += s.count;
      runs.push_back({{"step", step_name(s.step)}, {"count", s.count.str()}});
    }
    json rform = json::array();
    for (const auto& t : r_form(steps)) rform.push_back(t.kind == RTerm::Kind::V ? json("V") : json{{"U", t.n.str()}});
    json out{{"tile_count", count.str()}, {"steps", runs}, {"r_form", rform}};
    if (count <= kMaxListedTiles) {
      auto tiles = tiles_from_steps(PslElement(ExactMatrix::identity(2)), steps);
      json labels = json::array();
      for (const auto& t : tiles) labels.push_back(matrix_to_json(t.label.rep())["entries"]);
      Word w = word_from_tiles(tiles);
      out["tiles"] = labels;
      out["word"] = letters_json(w, sigma2());
      bool exact = PslElement(evaluate(w, sigma2())) == PslElement(g);
      out["exact"] = exact;
      ok = ok && exact;
    }
    bool product_ok = PslElement(product(r_form(steps))) == PslElement(g);
    out["r_form_exact"] = product_ok;
    ok = ok && product_ok;
    std::cout << out.dump() << '\n';
  });

  // word-length
  auto* wl = app.add_subcommand("word-length", "Exact word length by breadth-first search");
  std::string wl_gamma, gens_name = "sigma2";
  int max_radius = 12;
  wl->add_option("--gamma", wl_gamma, "Matrix JSON (file or inline)")->required();
  wl->add_option("--gens", gens_name, "sigma2|sigma3|sigma4")->capture_default_str();
  wl->add_option("--max-radius", max_radius, "Search radius")->capture_default_str();
  wl->callback([&] {
    ExactMatrix g = matrix_from_json(load_json(wl_gamma));
    int d = gens_name == "sigma2" ? 2 : gens_name == "sigma3" ? 3 : gens_name == "sigma4" ? 4 : -1;
    if (d < 0) throw std::invalid_argument("unknown generating set " + gens_name);
    if (d != g.dim()) throw std::invalid_argument("matrix dimension does not match the generating set");
    if (g.determinant() != 1) throw std::domain_error("gamma must have determinant 1");
    const GeneratorSet& gens = sigma(d);
    auto w = bfs_shortest_word(PslElement(g), gens, max_radius);
    json out{{"max_radius", max_radius}};
    if (w) {
      out["length"] = w->length();
      out["letters"] = letters_json(*w, gens);
      bool exact = PslElement(evaluate(*w, gens)) == PslElement(g);
      ok = ok && exact;
    } else {
      out["length"] = nullptr;
      out["exceeded"] = true;
    }
    std::cout << out.dump() << '\n';
  });

  // short-word
  auto* sw = app.add_subcommand("short-word", "Word of length O(log ||gamma||) for d >= 3");
  std::string sw_gamma;
  sw->add_option("--gamma", sw_gamma, "Matrix JSON (file or inline)")->required();
  sw->callback([&] {
    ExactMatrix g = matrix_from_json(load_json(sw_gamma));
    Word w = short_word(g);
    bool exact = PslElement(evaluate(w, sigma(g.dim()))) == PslElement(g);
    ok = ok && exact;
    double norm = operator_norm(g);
    double log_norm = log_operator_norm(g);
    json out{{"letters", letters_json(w, sigma(g.dim()))}, {"length", w.length()}, {"norm", norm}};
    out["ratio"] = log_norm > 0 ? json(static_cast<double>(w.length()) / log_norm) : json(nullptr);
    std::cout << out.dump() << '\n';
  });

  // experiment
  auto* exp = app.add_subcommand("experiment", "Word versus geometric distance experiments");
  exp->require_subcommand(1);
  std::string exp_out, exp_json;
  std::int64_t n_max = 1000000;
  int trials = 100, gen_len = 40, k_max = 100;
  std::uint64_t seed = 1;
  auto emit = [&](const ExperimentReport& r) {
    write_text(exp_out, r.to_csv());
    if (!exp_json.empty()) write_text(exp_json, r.to_json().dump(2) + "\n");
    std::cerr << r.name << ": " << r.summary.dump() << (r.passed ? "" : " FAILED") << '\n';
    for (const auto& f : r.failures) std::cerr << "  " << f << '\n';
    ok = ok && r.passed;
  };
  for (auto* sub : {exp->add_subcommand("d2", "d=2: word length of u^n against d_R"),
                    exp->add_subcommand("d3", "d=3: short words of random elements"),
                    exp->add_subcommand("lattice", "Z^2 acting on the Euclidean plane")}) {
    sub->add_option("--out", exp_out, "CSV output (default stdout)");
    sub->add_option("--json", exp_json, "Also write the report as JSON");
  }
  auto* d2 = exp->get_subcommand("d2");
  d2->add_option("--n-max", n_max, "Largest n")->capture_default_str();
  d2->callback([&] { emit(experiment_d2(n_max)); });
  auto* d3 = exp->get_subcommand("d3");
  d3->add_option("--trials", trials, "Number of random elements")->capture_default_str();
  d3->add_option("--gen-len", gen_len, "Letters per random element")->capture_default_str();
  d3->add_option("--seed", seed, "PRNG seed")->capture_default_str();
  d3->callback([&] { emit(experiment_d3(trials, gen_len, seed)); });
  auto* lat = exp->get_subcommand("lattice");
  lat->add_option("--k-max", k_max, "Box half-width")->capture_default_str();
  lat->callback([&] { emit(experiment_lattice(k_max)); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return ok ? 0 : 1;
}
