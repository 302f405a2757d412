#include <fstream>
#include <sstream>

#include <json.hpp>

#include "curve.hpp"

namespace elastica {

using nlohmann::json;

std::string curve_to_string(const ClosedCurve& curve) {
  json doc;
  doc["dim"] = curve.dim;
  doc["n_samples"] = curve.samples();
  json rows = json::array();
  for (int j = 0; j < curve.samples(); ++j) {
    json row = json::array();
    for (int c = 0; c < curve.dim; ++c) row.push_back(curve.points(j, c));
    rows.push_back(std::move(row));
  }
  doc["points"] = std::move(rows);
  return doc.dump(2) + "\n";
}

ClosedCurve curve_from_string(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed curve document: ") + e.what());
  }
  try {
    int dim = doc.at("dim").get<int>();
    int n = doc.at("n_samples").get<int>();
    const json& rows = doc.at("points");
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
      throw ParseError("points row count does not match n_samples");
    Mat pts(n, dim);
    for (int j = 0; j < n; ++j) {
      const json& row = rows[j];
      if (!row.is_array() || static_cast<int>(row.size()) != dim)
        throw ParseError("points row width does not match dim");
      for (int c = 0; c < dim; ++c) pts(j, c) = row[c].get<double>();
    }
    return ClosedCurve(dim, std::move(pts));
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed curve document: ") + e.what());
  }
}

void save_curve(const ClosedCurve& curve, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << curve_to_string(curve);
  if (!out) throw IoError("write failed: " + path);
}

ClosedCurve load_curve(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return curve_from_string(ss.str());
}

}  // namespace elastica
