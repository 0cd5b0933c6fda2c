#include "hyperword/json_io.hpp"

#include <stdexcept>

namespace hyperword {

json matrix_to_json(const ExactMatrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.dim(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.dim(); ++c) row.push_back(m(r, c).str());
    rows.push_back(row);
  }
  return {{"dim", m.dim()}, {"entries", rows}};
}

namespace {

BigInt parse_entry(const json& e) {
  if (e.is_string()) {
    const std::string s = e.get<std::string>();
    if (s.empty() || s.find_first_not_of("+-0123456789") != std::string::npos)
      throw std::invalid_argument("matrix entry is not an integer: " + s);
    return BigInt(s);
  }
  if (e.is_number_integer()) return BigInt(e.get<long long>());
  throw std::invalid_argument("matrix entries must be decimal strings or integers");
}

}  // namespace

ExactMatrix matrix_from_json(const json& j) {
  const json& rows = j.is_array() ? j : j.at("entries");  // a bare array of rows is accepted too
  const int d = j.is_object() && j.contains("dim") ? j.at("dim").get<int>() : static_cast<int>(rows.size());
  if (d < 1 || static_cast<int>(rows.size()) != d) throw std::invalid_argument("matrix JSON: dim and entries disagree");
  ExactMatrix m(d);
  for (int r = 0; r < d; ++r) {
    if (static_cast<int>(rows[r].size()) != d) throw std::invalid_argument("matrix JSON: row length mismatch");
    for (int c = 0; c < d; ++c) m(r, c) = parse_entry(rows[r][c]);
  }
  return m;
}

Model parse_model(const std::string& tag) {
  if (tag == "H") return Model::H;
  if (tag == "D") return Model::D;
  if (tag == "B") return Model::B;
  if (tag == "U") return Model::U;
  throw std::invalid_argument("unknown model tag: " + tag);
}

std::string model_tag(Model m) {
  switch (m) {
    case Model::H: return "H";
    case Model::D: return "D";
    case Model::B: return "B";
    case Model::U: return "U";
  }
  return "?";
}

namespace {

HyperboloidPoint<double> to_hyperboloid(Model from, const Vec<double>& x) {
  switch (from) {
    case Model::H: return HyperboloidPoint<double>(x);
    case Model::D: return gnomonic(DiscPoint<double>(x));
    case Model::B: return stereographic(BallPoint<double>(x));
    case Model::U: return stereographic(eta(HalfSpacePoint<double>(x)));
  }
  throw std::logic_error("bad model");
}

}  // namespace

Vec<double> convert_point(Model from, Model to, const Vec<double>& coords) {
  if (from == to) {
    validate_point(from, coords);
    return coords;
  }
  HyperboloidPoint<double> h = to_hyperboloid(from, coords);
  switch (to) {
    case Model::H: return h.coords();
    case Model::D: return gnomonic_inverse(h).coords();
    case Model::B: return stereographic_inverse(h).coords();
    case Model::U: return eta_inverse(stereographic_inverse(h)).coords();
  }
  throw std::logic_error("bad model");
}

void validate_point(Model model, const Vec<double>& coords) { to_hyperboloid(model, coords); }

json point_to_json(Model model, const Vec<double>& coords) {
  return {{"model", model_tag(model)}, {"coords", std::vector<double>(coords.data(), coords.data() + coords.size())}};
}

Vec<double> coords_from_json(const json& j) {
  const json& arr = j.is_object() ? j.at("coords") : j;
  auto v = arr.get<std::vector<double>>();
  return Eigen::Map<Vec<double>>(v.data(), static_cast<Eigen::Index>(v.size()));
}

json spd_to_json(const SpdPoint<double>& s) {
  json rows = json::array();
  for (int r = 0; r < s.dim(); ++r) {
    json row = json::array();
    for (int c = 0; c < s.dim(); ++c) row.push_back(s.matrix()(r, c));
    rows.push_back(row);
  }
  return {{"dim", s.dim()}, {"entries", rows}};
}

SpdPoint<double> spd_from_json(const json& j) {
  const json& rows = j.at("entries");
  const int n = j.contains("dim") ? j.at("dim").get<int>() : static_cast<int>(rows.size());
  if (n < 1 || static_cast<int>(rows.size()) != n) throw std::invalid_argument("SPD JSON: dim and entries disagree");
  Mat<double> m(n, n);
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(rows[r].size()) != n) throw std::invalid_argument("SPD JSON: row length mismatch");
    for (int c = 0; c < n; ++c) m(r, c) = rows[r][c].get<double>();
  }
  return SpdPoint<double>(m);
}

}  // namespace hyperword
