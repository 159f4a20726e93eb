#include "locint/serialize.hpp"

#include <cmath>
#include <limits>

#include "locint/error.hpp"

namespace locint {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::string label_from_json(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  parse_fail("labels must be strings or integers");
}

}  // namespace

json number_to_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double number_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  parse_fail("expected a number");
}

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    parse_fail("complex numbers are [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const Matrix& m) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k) entries.push_back(to_json(m(i, k)));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

Matrix matrix_from_json(const json& j) {
  const auto rows = field(j, "rows").get<long long>();
  const auto cols = field(j, "cols").get<long long>();
  const json& entries = field(j, "entries");
  if (rows < 0 || cols < 0) parse_fail("negative matrix shape");
  if (!entries.is_array() || static_cast<long long>(entries.size()) != rows * cols)
    parse_fail("matrix entries length must equal rows * cols");
  Matrix m(rows, cols);
  std::size_t at = 0;
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(entries[at++]);
  if (!all_finite(m)) parse_fail("matrix entries must be finite");
  return m;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

Vector vector_from_json(const json& j) {
  if (!j.is_array()) parse_fail("vectors are arrays of complex numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
  return v;
}

json to_json(const DirectedPoset& p) {
  json covers = json::array();
  for (auto [a, b] : p.cover_pairs()) covers.push_back({p.label(a), p.label(b)});
  return {{"elements", p.elements()}, {"covers", covers}};
}

DirectedPoset poset_from_json(const json& j) {
  const json& elems = field(j, "elements");
  if (!elems.is_array()) parse_fail("\"elements\" must be an array");
  std::vector<std::string> labels;
  for (const auto& e : elems) labels.push_back(label_from_json(e));
  std::vector<std::pair<std::string, std::string>> covers;
  if (j.contains("covers")) {
    for (const auto& c : j.at("covers")) {
      if (!c.is_array() || c.size() != 2) parse_fail("covers are [lower, upper] pairs");
      covers.emplace_back(label_from_json(c[0]), label_from_json(c[1]));
    }
  }
  return DirectedPoset::from_covers(std::move(labels), covers);
}

json to_json(const QuantizedDomain& d) {
  json levels = json::object();
  const auto& poset = d.poset();
  for (std::size_t i = 0; i < poset.size(); ++i) {
    json basis = json::array();
    for (Eigen::Index k = 0; k < d.dim(i); ++k) basis.push_back(vector_to_json(d.basis(i).col(k)));
    levels[poset.label(i)] = {{"dim", d.dim(i)}, {"basis", basis}};
    // Reload derives [I; 0] for prefix levels, so anything else is stored.
    Matrix pad = Matrix::Zero(d.dim(d.top()), d.dim(i));
    pad.topRows(d.dim(i)).setIdentity();
    if (!d.is_prefix(i, d.top()) || !bitwise_equal(d.coords(i), pad))
      levels[poset.label(i)]["coords"] = to_json(d.coords(i));
  }
  return {{"poset", to_json(poset)}, {"ambient_dim", d.ambient_dim()}, {"levels", levels}};
}

QuantizedDomain domain_from_json(const json& j, const DirectedPoset* shared_poset) {
  if (!j.contains("poset") && shared_poset == nullptr) parse_fail("domain without a poset");
  DirectedPoset poset = j.contains("poset") ? poset_from_json(j.at("poset")) : *shared_poset;
  if (shared_poset != nullptr && !(poset == *shared_poset))
    throw Error(ErrorCode::FiberPosetMismatch, "fiber poset differs from the shared poset");
  const auto n = field(j, "ambient_dim").get<long long>();
  if (n < 0) parse_fail("negative ambient_dim");
  const json& levels = field(j, "levels");
  std::vector<Eigen::Index> dims(poset.size(), -1);
  std::map<DirectedPoset::Index, Matrix> seeds;
  for (auto it = levels.begin(); it != levels.end(); ++it) {
    const auto level = poset.index_of(it.key());
    dims[level] = field(it.value(), "dim").get<long long>();
    if (it.value().contains("basis")) {
      const json& vecs = it.value().at("basis");
      Matrix b(n, static_cast<Eigen::Index>(vecs.size()));
      for (std::size_t k = 0; k < vecs.size(); ++k) {
        Vector v = vector_from_json(vecs[k]);
        if (v.size() != n) parse_fail("basis vector length must equal ambient_dim");
        b.col(static_cast<Eigen::Index>(k)) = v;
      }
      seeds[level] = std::move(b);
    }
  }
  for (std::size_t i = 0; i < poset.size(); ++i)
    if (dims[i] < 0) parse_fail("missing level " + poset.label(i));
  if (seeds.size() == poset.size()) {
    std::vector<Matrix> bases;
    for (std::size_t i = 0; i < poset.size(); ++i) {
      if (seeds[i].cols() != dims[i]) parse_fail("basis size differs from dim at " + poset.label(i));
      bases.push_back(seeds[i]);
    }
    auto adopted = QuantizedDomain::from_bases(poset, n, bases);
    // Stored coordinates keep V_alpha == V_top C_alpha bitwise after reload.
    std::vector<Matrix> coords;
    for (std::size_t i = 0; i < poset.size(); ++i) {
      const json& lj = levels.at(poset.label(i));
      coords.push_back(lj.contains("coords") ? matrix_from_json(lj.at("coords")) : adopted.coords(i));
    }
    auto exact = QuantizedDomain::from_parts(poset, n, std::move(bases), std::move(coords));
    auto canonical = [](const QuantizedDomain& d) {
      const auto diag = validate(d);
      return diag.ok() && diag.canonical_violations.empty();
    };
    if (canonical(exact)) return exact;
    if (canonical(adopted)) return adopted;
  }
  return QuantizedDomain::build(std::move(poset), n, dims, seeds);
}

json to_json(const DirectIntegralDomain& d) {
  json weights = json::object();
  json fibers = json::object();
  const auto& atoms = d.measure().atoms();
  for (std::size_t p = 0; p < atoms.size(); ++p) {
    weights[atoms[p]] = d.measure().weight(p);
    json f = to_json(d.fiber(p));
    f.erase("poset");
    fibers[atoms[p]] = std::move(f);
  }
  return {{"measure", {{"atoms", atoms}, {"weights", weights}}},
          {"poset", to_json(d.poset())},
          {"fibers", fibers}};
}

DirectIntegralDomain direct_integral_from_json(const json& j) {
  const json& m = field(j, "measure");
  std::vector<std::string> atoms;
  for (const auto& a : field(m, "atoms")) atoms.push_back(label_from_json(a));
  std::vector<double> weights;
  for (const auto& a : atoms) {
    if (!m.contains("weights")) {
      weights.push_back(1.0);
      continue;
    }
    const json& w = m.at("weights");
    if (!w.contains(a)) parse_fail("missing weight for atom " + a);
    weights.push_back(w.at(a).get<double>());
  }
  AtomicMeasureSpace measure(atoms, std::move(weights));
  std::optional<DirectedPoset> shared;
  if (j.contains("poset")) shared = poset_from_json(j.at("poset"));
  const json& fibers_json = field(j, "fibers");
  std::vector<QuantizedDomain> fibers;
  for (const auto& a : atoms) {
    if (!fibers_json.contains(a)) parse_fail("missing fiber for atom " + a);
    fibers.push_back(domain_from_json(fibers_json.at(a), shared ? &*shared : nullptr));
  }
  for (const auto& f : fibers)
    if (!(f.poset() == fibers.front().poset()))
      throw Error(ErrorCode::FiberPosetMismatch, "fibers must share one poset");
  return DirectIntegralDomain(std::move(measure), std::move(fibers));
}

json to_json(const LocalOperator& op) { return {{"top_matrix", to_json(op.top_matrix())}}; }

LocalOperator local_operator_from_json(const json& j, std::shared_ptr<const QuantizedDomain> domain) {
  if (j.contains("top_matrix")) return LocalOperator::from_top(std::move(domain), matrix_from_json(j.at("top_matrix")));
  if (j.contains("blocks")) {
    const json& b = j.at("blocks");
    const auto& poset = domain->poset();
    std::vector<Matrix> blocks;
    for (const auto& label : poset.elements()) {
      if (!b.contains(label)) throw Error(ErrorCode::BlockIncompatible, "missing block for level " + label);
      blocks.push_back(matrix_from_json(b.at(label)));
    }
    return LocalOperator::from_blocks(std::move(domain), blocks);
  }
  parse_fail("operator needs \"top_matrix\" or \"blocks\"");
}

json to_json(const DecomposableOperator& op) {
  json fibers = json::object();
  const auto& atoms = op.dint()->measure().atoms();
  for (std::size_t p = 0; p < atoms.size(); ++p) fibers[atoms[p]] = to_json(op.fiber(p));
  return {{"fibers", fibers}};
}

DecomposableOperator decomposable_from_json(const json& j, DintPtr dint) {
  const json& fj = field(j, "fibers");
  std::vector<LocalOperator> fibers;
  const auto& atoms = dint->measure().atoms();
  for (std::size_t p = 0; p < atoms.size(); ++p) {
    if (!fj.contains(atoms[p])) throw Error(ErrorCode::FiberMismatch, "missing fiber operator for atom " + atoms[p]);
    fibers.push_back(local_operator_from_json(fj.at(atoms[p]), std::make_shared<const QuantizedDomain>(dint->fiber(p))));
  }
  return DecomposableOperator::from_fibers(std::move(dint), std::move(fibers));
}

json to_json(const DiagonalizableOperator& op) {
  json f = json::object();
  const auto& atoms = op.dint()->measure().atoms();
  for (std::size_t p = 0; p < atoms.size(); ++p) f[atoms[p]] = to_json(op.function()[p]);
  return {{"f", f}};
}

DiagonalizableOperator diagonalizable_from_json(const json& j, DintPtr dint) {
  const json& fj = field(j, "f");
  std::vector<Complex> f;
  for (const auto& a : dint->measure().atoms()) {
    if (!fj.contains(a)) throw Error(ErrorCode::MissingAtomValue, "f undefined at atom " + a);
    f.push_back(complex_from_json(fj.at(a)));
  }
  return DiagonalizableOperator::from_function(std::move(dint), std::move(f));
}

json to_json(const CheckReport& r) {
  json residuals = json::object();
  for (const auto& [k, v] : r.residuals) residuals[k] = number_to_json(v);
  json values = json::object();
  for (const auto& [k, v] : r.values) values[k] = number_to_json(v);
  return {{"check", r.check},
          {"status", r.pass ? "PASS" : "FAIL"},
          {"dimensions", r.dimensions},
          {"residuals", residuals},
          {"values", values},
          {"details", r.details},
          {"notes", r.notes}};
}

CheckReport check_report_from_json(const json& j) {
  CheckReport r;
  r.check = field(j, "check").get<std::string>();
  r.pass = field(j, "status").get<std::string>() == "PASS";
  if (j.contains("dimensions")) r.dimensions = j.at("dimensions").get<std::map<std::string, long long>>();
  if (j.contains("residuals"))
    for (auto it = j.at("residuals").begin(); it != j.at("residuals").end(); ++it)
      r.residuals[it.key()] = number_from_json(it.value());
  if (j.contains("values"))
    for (auto it = j.at("values").begin(); it != j.at("values").end(); ++it)
      r.values[it.key()] = number_from_json(it.value());
  if (j.contains("details")) r.details = j.at("details").get<std::map<std::string, std::string>>();
  if (j.contains("notes")) r.notes = j.at("notes").get<std::vector<std::string>>();
  return r;
}

}  // namespace locint
