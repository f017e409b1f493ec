#include "almfast/instance_io.hpp"

#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace almfast {

namespace {

using nlohmann::json;

json vector_to_json(const Vector& v) {
  json arr = json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

json matrix_to_json(const Matrix& m) {
  json arr = json::array();
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) arr.push_back(m(r, c));
  return arr;
}

Vector vector_from_json(const json& arr) {
  Vector v(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) v[static_cast<Index>(i)] = arr[i].get<double>();
  return v;
}

Matrix matrix_from_json(const json& arr, Index rows, Index cols) {
  if (static_cast<Index>(arr.size()) != rows * cols)
    throw std::invalid_argument("instance JSON: matrix entry count mismatch");
  Matrix m(rows, cols);
  std::size_t idx = 0;
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c) m(r, c) = arr[idx++].get<double>();
  return m;
}

json set_to_json(const SimpleSet& set) {
  json out;
  switch (set.kind()) {
    case SimpleSet::Kind::box:
      out["type"] = "box";
      out["lower"] = vector_to_json(set.lower());
      out["upper"] = vector_to_json(set.upper());
      break;
    case SimpleSet::Kind::ball:
      out["type"] = "ball";
      out["center"] = vector_to_json(set.center());
      out["radius"] = set.radius();
      break;
    case SimpleSet::Kind::simplex:
      out["type"] = "simplex";
      out["n"] = set.dim();
      out["scale"] = set.scale();
      break;
  }
  return out;
}

SimpleSet set_from_json(const json& doc) {
  const std::string type = doc.at("type").get<std::string>();
  if (type == "box")
    return SimpleSet::box(vector_from_json(doc.at("lower")),
                          vector_from_json(doc.at("upper")));
  if (type == "ball")
    return SimpleSet::ball(vector_from_json(doc.at("center")),
                           doc.at("radius").get<double>());
  if (type == "simplex")
    return SimpleSet::simplex(doc.at("n").get<Index>(),
                              doc.at("scale").get<double>());
  throw std::invalid_argument("instance JSON: unknown set type " + type);
}

}  // namespace

std::string instance_to_json(const ProblemInstance& inst,
                             const std::optional<ReferenceSolution>& reference) {
  if (!inst.is_quadratic())
    throw std::invalid_argument("instance_to_json: only quadratic objectives are serializable");
  json doc;
  doc["n"] = inst.dim();
  doc["m"] = inst.num_constraints();
  doc["objective"] = {{"type", "quadratic"},
                      {"Q", matrix_to_json(inst.quadratic().Q)},
                      {"c", vector_to_json(inst.quadratic().c)}};
  doc["G"] = matrix_to_json(inst.constraint_matrix());
  doc["g"] = vector_to_json(inst.constraint_offset());
  doc["set"] = set_to_json(inst.set());
  if (reference) {
    doc["reference"] = {{"u_star", vector_to_json(reference->u_star)},
                        {"x_star", vector_to_json(reference->x_star)},
                        {"f_star", reference->f_star},
                        {"kkt_residual", reference->kkt_residual}};
  }
  return doc.dump(2);
}

InstanceFile instance_from_json(const std::string& text) {
  const json doc = json::parse(text);
  const Index n = doc.at("n").get<Index>();
  const Index m = doc.at("m").get<Index>();

  const json& objective = doc.at("objective");
  if (objective.at("type").get<std::string>() != "quadratic")
    throw std::invalid_argument("instance JSON: unsupported objective type");
  QuadraticObjective quad(matrix_from_json(objective.at("Q"), n, n),
                          vector_from_json(objective.at("c")));

  ProblemInstance inst(std::move(quad), matrix_from_json(doc.at("G"), m, n),
                       vector_from_json(doc.at("g")),
                       set_from_json(doc.at("set")));

  InstanceFile out{std::move(inst), std::nullopt};
  if (doc.contains("reference")) {
    const json& ref = doc.at("reference");
    ReferenceSolution solution;
    solution.u_star = vector_from_json(ref.at("u_star"));
    solution.x_star = vector_from_json(ref.at("x_star"));
    solution.f_star = ref.at("f_star").get<double>();
    solution.kkt_residual = ref.at("kkt_residual").get<double>();
    out.reference = std::move(solution);
  }
  return out;
}

void save_instance(const std::string& path, const ProblemInstance& inst,
                   const std::optional<ReferenceSolution>& reference) {
  std::ofstream stream(path, std::ios::binary);
  if (!stream) throw std::runtime_error("cannot open " + path + " for writing");
  stream << instance_to_json(inst, reference) << "\n";
}

InstanceFile load_instance(const std::string& path) {
  std::ifstream stream(path, std::ios::binary);
  if (!stream) throw std::runtime_error("cannot open " + path);
  const std::string text((std::istreambuf_iterator<char>(stream)),
                         std::istreambuf_iterator<char>());
  return instance_from_json(text);
}

}  // namespace almfast
