#include "fellb/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace fellb {

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix: expected a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.at(0).size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j.at(i);
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw std::invalid_argument("matrix: ragged rows");
    for (Eigen::Index k = 0; k < cols; ++k) {
      const Json& e = row.at(k);
      if (!e.is_array() || e.size() != 2 || !e.at(0).is_number() || !e.at(1).is_number())
        throw std::invalid_argument("matrix: entries must be [re, im] pairs");
      m(i, k) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
    }
  }
  return m;
}

Json group_to_json(const FiniteGroup& g) {
  return Json{{"order", g.order()}, {"cayley", g.cayley()}, {"labels", g.labels()}};
}

FiniteGroup group_from_json(const Json& j) {
  if (!j.contains("cayley")) throw std::invalid_argument("group: missing cayley table");
  auto cayley = j.at("cayley").get<std::vector<std::vector<int>>>();
  if (j.contains("order") && j.at("order").get<int>() != static_cast<int>(cayley.size()))
    throw std::invalid_argument("group: order does not match the table");
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  return FiniteGroup::from_table(std::move(cayley), std::move(labels));
}

Json bundle_to_json(const FellBundle& b) {
  Json fibers = Json::object();
  for (int s = 0; s < b.group().order(); ++s) {
    Json mats = Json::array();
    for (const auto& m : b.fiber(s).basis()) mats.push_back(matrix_to_json(m));
    fibers[std::to_string(s)] = std::move(mats);
  }
  return Json{{"group", group_to_json(b.group())},
              {"ambient_dim", b.ambient_dim()},
              {"fibers", std::move(fibers)}};
}

BundlePtr bundle_from_json(const Json& j) {
  FiniteGroup g = group_from_json(j.at("group"));
  const int n = j.at("ambient_dim").get<int>();
  if (n <= 0) throw std::invalid_argument("bundle: ambient_dim must be positive");
  const Json& fibers = j.at("fibers");
  std::vector<MatrixSubspace> spaces;
  spaces.reserve(g.order());
  for (int s = 0; s < g.order(); ++s) {
    const std::string key = std::to_string(s);
    if (!fibers.contains(key))
      throw std::invalid_argument("bundle: missing fiber over element " + key);
    std::vector<ComplexMatrix> gens;
    for (const auto& mj : fibers.at(key)) {
      ComplexMatrix m = matrix_from_json(mj);
      if (m.rows() != n || m.cols() != n)
        throw std::invalid_argument("bundle: fiber matrix over element " + key +
                                    " is not ambient_dim x ambient_dim");
      gens.push_back(std::move(m));
    }
    spaces.push_back(MatrixSubspace::from_span(n, gens));
  }
  return std::make_shared<FellBundle>(std::move(g), n, std::move(spaces));
}

Json section_to_json(const Section& y) {
  Json values = Json::object();
  for (int s : y.support()) values[std::to_string(s)] = matrix_to_json(y.value(s));
  return Json{{"values", std::move(values)}};
}

Section section_from_json(const BundlePtr& bundle, const Json& j) {
  const int n = bundle->ambient_dim();
  std::vector<ComplexMatrix> vals(bundle->group().order(), ComplexMatrix::Zero(n, n));
  for (const auto& [key, mj] : j.at("values").items()) {
    int s = std::stoi(key);
    if (s < 0 || s >= bundle->group().order())
      throw std::invalid_argument("section: element index out of range: " + key);
    vals[s] = matrix_from_json(mj);
    if (vals[s].rows() != n || vals[s].cols() != n)
      throw std::invalid_argument("section: value shape mismatch at element " + key);
  }
  return Section(bundle, std::move(vals));
}

Json functional_to_json(const Functional& phi) {
  Json comps = Json::object();
  for (int s : phi.support()) comps[std::to_string(s)] = matrix_to_json(phi.component(s));
  return Json{{"components", std::move(comps)}};
}

Functional functional_from_json(const BundlePtr& bundle, const Json& j) {
  const int n = bundle->ambient_dim();
  std::vector<ComplexMatrix> comps(bundle->group().order(), ComplexMatrix::Zero(n, n));
  for (const auto& [key, mj] : j.at("components").items()) {
    int s = std::stoi(key);
    if (s < 0 || s >= bundle->group().order())
      throw std::invalid_argument("functional: element index out of range: " + key);
    comps[s] = matrix_from_json(mj);
    if (comps[s].rows() != n || comps[s].cols() != n)
      throw std::invalid_argument("functional: component shape mismatch at element " + key);
  }
  return Functional(bundle, std::move(comps));
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  Json j;
  in >> j;
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace fellb
