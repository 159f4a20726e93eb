#include "locint/scenario.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "locint/checks.hpp"
#include "locint/commutant.hpp"
#include "locint/error.hpp"
#include "locint/random_instances.hpp"

namespace locint {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

void cap(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::CapExceeded, what);
}

std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) parse_fail(where + ": missing field \"" + key + "\"");
  return j.at(key);
}

std::string ref(const json& j, const char* key, const std::string& where) {
  const json& v = require(j, key, where);
  if (!v.is_string()) parse_fail(where + ": \"" + key + "\" must be a name");
  return v.get<std::string>();
}

void check_domain_caps(const QuantizedDomain& d, const Caps& caps, const std::string& name) {
  cap(static_cast<long long>(d.poset().size()) <= caps.poset,
      name + ": poset has " + std::to_string(d.poset().size()) + " elements (cap " + std::to_string(caps.poset) + ")");
  cap(d.ambient_dim() <= caps.ambient,
      name + ": ambient dimension " + std::to_string(d.ambient_dim()) + " (cap " + std::to_string(caps.ambient) + ")");
}

DomainEntry parse_domain(const json& j, const Caps& caps, const std::string& name) {
  const std::string kind = j.value("kind", "quantized");
  if (kind == "direct_integral") {
    // Caps first: construction cost grows with the sizes being capped.
    if (j.contains("measure") && j.at("measure").contains("atoms")) {
      const auto atoms = static_cast<long long>(j.at("measure").at("atoms").size());
      cap(atoms <= caps.atoms, name + ": " + std::to_string(atoms) + " atoms (cap " + std::to_string(caps.atoms) + ")");
    }
    if (j.contains("fibers")) {
      long long total = 0;
      for (const auto& f : j.at("fibers")) total += f.value("ambient_dim", 0LL);
      cap(total <= caps.ambient,
          name + ": assembled ambient dimension " + std::to_string(total) + " (cap " + std::to_string(caps.ambient) + ")");
    }
    auto d = std::make_shared<const DirectIntegralDomain>(direct_integral_from_json(j));
    check_domain_caps(*d->assembled(), caps, name);
    return d;
  }
  if (kind == "standard_flag") {
    std::vector<Eigen::Index> dims;
    for (const auto& v : require(j, "dims", name)) dims.push_back(v.get<long long>());
    cap(static_cast<long long>(dims.size()) <= caps.poset, name + ": chain longer than the poset cap");
    cap(dims.empty() || dims.back() <= caps.ambient, name + ": ambient dimension above cap");
    auto d = std::make_shared<const QuantizedDomain>(QuantizedDomain::standard_flag(dims));
    return d;
  }
  if (kind == "quantized") {
    cap(j.value("ambient_dim", 0LL) <= caps.ambient, name + ": ambient dimension " +
                                                         std::to_string(j.value("ambient_dim", 0LL)) + " (cap " +
                                                         std::to_string(caps.ambient) + ")");
    auto d = std::make_shared<const QuantizedDomain>(domain_from_json(j));
    check_domain_caps(*d, caps, name);
    return d;
  }
  parse_fail(name + ": unknown domain kind \"" + kind + "\"");
}

std::shared_ptr<const QuantizedDomain> quantized_of(const DomainEntry& e) {
  if (auto q = std::get_if<std::shared_ptr<const QuantizedDomain>>(&e)) return *q;
  return std::get<DintPtr>(e)->assembled();
}

/// A quantized domain is the direct integral over a single unit atom.
DintPtr dint_of(const DomainEntry& e) {
  if (auto d = std::get_if<DintPtr>(&e)) return *d;
  const auto& q = *std::get<std::shared_ptr<const QuantizedDomain>>(e);
  return std::make_shared<const DirectIntegralDomain>(AtomicMeasureSpace::counting(1), std::vector<QuantizedDomain>{q});
}

const DomainEntry& find_domain(const Scenario& s, const std::string& name, const std::string& where) {
  auto it = s.domains.find(name);
  if (it == s.domains.end()) throw Error(ErrorCode::UnresolvedReference, where + ": unknown domain \"" + name + "\"");
  return it->second;
}

const OperatorEntry& find_operator(const Scenario& s, const std::string& name, const std::string& where) {
  auto it = s.operators.find(name);
  if (it == s.operators.end()) throw Error(ErrorCode::UnresolvedReference, where + ": unknown operator \"" + name + "\"");
  return it->second;
}

OperatorEntry parse_operator(const Scenario& s, const json& j, const std::string& name) {
  const std::string kind = j.value("kind", "local");
  if (kind == "lazy") {
    const int depth = require(j, "depth", name).get<int>();
    auto op = lazy_rule(ref(j, "rule", name), depth);
    cap(op.dim_rule(depth) <= s.caps.ambient, name + ": truncation at depth " + std::to_string(depth) +
                                                  " exceeds the ambient cap");
    return op;
  }
  const DomainEntry& d = find_domain(s, ref(j, "domain_ref", name), name);
  if (kind == "local") return local_operator_from_json(j, quantized_of(d));
  if (kind == "decomposable") return decomposable_from_json(j, dint_of(d));
  if (kind == "diagonalizable") return diagonalizable_from_json(j, dint_of(d));
  parse_fail(name + ": unknown operator kind \"" + kind + "\"");
}

const std::vector<std::string>& task_names() {
  static const std::vector<std::string> names = {"validate",        "seminorms",         "norm_profile",
                                                 "commutant",       "verify_dec_diag",   "verify_projective",
                                                 "interchange",     "density_profile",   "random_suite"};
  return names;
}

InstanceBounds suite_bounds(const json& t) {
  InstanceBounds b;
  b.max_atoms = t.value("max_atoms", b.max_atoms);
  b.max_fiber_dim = t.value("max_fiber_dim", static_cast<long long>(b.max_fiber_dim));
  b.max_chain = t.value("max_chain", b.max_chain);
  b.allow_diamond = t.value("diamond", b.allow_diamond);
  b.counting_measure = t.value("counting", b.counting_measure);
  return b;
}

void check_task_refs(const Scenario& s, const TaskSpec& t, const std::string& where) {
  const json& p = t.params;
  if (p.contains("domain")) find_domain(s, ref(p, "domain", where), where);
  if (p.contains("operator")) find_operator(s, ref(p, "operator", where), where);
  if (p.contains("generators"))
    for (const auto& g : p.at("generators")) {
      const auto name = g.get<std::string>();
      if (name.empty() || name[0] != '@') find_operator(s, name, where);
    }
  if (t.task == "random_suite") {
    const auto b = suite_bounds(p);
    cap(static_cast<long long>(b.max_atoms) <= s.caps.atoms, where + ": max_atoms above cap");
    cap(static_cast<long long>(b.max_chain) <= s.caps.poset && (!b.allow_diamond || 4 <= s.caps.poset),
        where + ": poset size above cap");
    cap(static_cast<long long>(b.max_atoms) * b.max_fiber_dim <= s.caps.ambient, where + ": ambient size above cap");
    if (b.max_atoms < 1 || b.max_chain < 1 || b.max_fiber_dim < 1)
      throw Error(ErrorCode::InvalidArgument, where + ": random_suite bounds must be positive");
  }
  const std::vector<std::string> need_domain = {"validate", "commutant", "verify_dec_diag", "verify_projective",
                                                "interchange", "density_profile"};
  for (const auto& n : need_domain)
    if (t.task == n && !p.contains("domain")) parse_fail(where + ": task needs a \"domain\"");
  if ((t.task == "seminorms" || t.task == "norm_profile") && !p.contains("operator"))
    parse_fail(where + ": task needs an \"operator\"");
}

}  // namespace

Caps caps_from_environment() {
  Caps caps;
  const char* env = std::getenv("LOCINT_CAPS");
  if (env == nullptr) return caps;
  std::stringstream ss(env);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::InvalidArgument, "LOCINT_CAPS entries are key=value");
    const std::string key = item.substr(0, eq);
    long long value = 0;
    try {
      value = std::stoll(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "LOCINT_CAPS value for " + key + " is not an integer");
    }
    if (key == "ambient") caps.ambient = value;
    else if (key == "atoms") caps.atoms = value;
    else if (key == "poset") caps.poset = value;
    else throw Error(ErrorCode::InvalidArgument, "unknown LOCINT_CAPS key " + key);
  }
  return caps;
}

std::uint64_t task_seed(std::uint64_t seed, std::size_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(index) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Scenario parse_scenario(const std::string& text, const Caps& caps) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, "malformed JSON at " + line_col(text, e.byte) + " (byte " +
                                           std::to_string(e.byte) + ")");
  }
  Scenario s;
  s.caps = caps;
  try {
    if (!j.is_object()) parse_fail("scenario must be a JSON object");
    s.seed = j.value("seed", 0ULL);
    if (j.contains("domains"))
      for (auto it = j.at("domains").begin(); it != j.at("domains").end(); ++it)
        s.domains.emplace(it.key(), parse_domain(it.value(), caps, "domain " + it.key()));
    if (j.contains("operators"))
      for (auto it = j.at("operators").begin(); it != j.at("operators").end(); ++it)
        s.operators.emplace(it.key(), parse_operator(s, it.value(), "operator " + it.key()));
    if (j.contains("tasks")) {
      std::size_t i = 0;
      for (const auto& t : j.at("tasks")) {
        const std::string where = "task " + std::to_string(i++);
        TaskSpec spec{ref(t, "task", where), t};
        if (std::find(task_names().begin(), task_names().end(), spec.task) == task_names().end())
          parse_fail(where + ": unknown task \"" + spec.task + "\"");
        check_task_refs(s, spec, where);
        s.tasks.push_back(std::move(spec));
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed scenario: ") + e.what());
  }
  return s;
}

Scenario load_scenario(const std::string& path, const Caps& caps) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), caps);
}

namespace {

CheckReport run_validate(const DomainEntry& d) {
  CheckReport r;
  r.check = "validate";
  auto add = [&](const QuantizedDomain& q, const std::string& prefix) {
    const auto diag = validate(q);
    for (std::size_t a = 0; a < q.poset().size(); ++a) r.dimensions[prefix + q.poset().label(a)] = q.dim(a);
    for (const auto& inc : diag.inclusions) {
      auto& slot = r.residuals[prefix + "inclusion"];
      slot = std::max(slot, inc.residual);
    }
    for (const auto& [k, v] : diag.orthonormality_defect) {
      auto& slot = r.residuals[prefix + "orthonormality"];
      slot = std::max(slot, v);
    }
    for (const auto& [k, v] : diag.coordinate_residual) {
      auto& slot = r.residuals[prefix + "coordinates"];
      slot = std::max(slot, v);
    }
    for (const auto& f : diag.failures) r.fail_if(true, prefix + f);
    for (const auto& c : diag.canonical_violations)
      r.notes.push_back(prefix + "level " + c + " does not extend its parent's basis");
  };
  if (auto q = std::get_if<std::shared_ptr<const QuantizedDomain>>(&d)) {
    add(**q, "");
  } else {
    const auto& dint = *std::get<DintPtr>(d);
    for (std::size_t p = 0; p < dint.atom_count(); ++p) add(dint.fiber(p), dint.measure().atoms()[p] + ":");
    add(*dint.assembled(), "assembled:");
    r.dimensions["atoms"] = static_cast<long long>(dint.atom_count());
  }
  return r;
}

CheckReport run_seminorms(const OperatorEntry& op, const json& params) {
  if (auto lazy = std::get_if<LazyChainOperator>(&op)) {
    CheckReport r;
    r.check = "seminorms";
    r.details["rule"] = lazy->name;
    double prev = 0.0;
    for (int n = 1; n <= lazy->truncation_depth; ++n) {
      const auto t = lazy_truncate(*lazy, n);
      const double p = uniform_seminorm(t, t.domain()->top());
      r.values["p." + std::to_string(n)] = p;
      r.bound("monotone_excess", std::max(0.0, prev - p), check_tol::kMonotone);
      prev = p;
    }
    r.dimensions["depth"] = lazy->truncation_depth;
    return r;
  }
  const LocalOperator& t = std::holds_alternative<LocalOperator>(op)          ? std::get<LocalOperator>(op)
                           : std::holds_alternative<DecomposableOperator>(op) ? std::get<DecomposableOperator>(op).assembled()
                           : std::get<DiagonalizableOperator>(op).as_decomposable().assembled();
  CheckReport r = check_seminorm_laws(t, t);
  r.check = "seminorms";
  const Eigen::Index n = t.domain()->ambient_dim();
  if (params.contains("strong")) {
    std::size_t i = 0;
    for (const auto& u : params.at("strong")) {
      const Vector v = vector_from_json(u);
      if (v.size() != n) throw Error(ErrorCode::VectorOutsideDomain, "strong seminorm vector has wrong length");
      const auto s = seminorm(t, Seminorm::strong(v));
      r.values["strong." + std::to_string(i)] = s.value;
      r.details["strong." + std::to_string(i) + ".level"] = t.domain()->poset().label(s.level);
      ++i;
    }
  }
  if (params.contains("weak")) {
    std::size_t i = 0;
    for (const auto& uv : params.at("weak")) {
      if (!uv.is_array() || uv.size() != 2) parse_fail("weak seminorm entries are [u, v] pairs");
      const Vector u = vector_from_json(uv[0]), v = vector_from_json(uv[1]);
      if (u.size() != n || v.size() != n)
        throw Error(ErrorCode::VectorOutsideDomain, "weak seminorm vector has wrong length");
      const auto s = seminorm(t, Seminorm::weak(u, v));
      r.values["weak." + std::to_string(i)] = s.value;
      r.details["weak." + std::to_string(i) + ".level"] = t.domain()->poset().label(s.level);
      ++i;
    }
  }
  return r;
}

CheckReport run_norm_profile(const OperatorEntry& op) {
  if (auto d = std::get_if<DecomposableOperator>(&op)) return check_norm_formula(*d);
  if (auto f = std::get_if<DiagonalizableOperator>(&op)) {
    CheckReport r = check_norm_formula(f->as_decomposable());
    r.values["sup_norm"] = f->sup_norm();
    return r;
  }
  throw Error(ErrorCode::InvalidArgument, "norm_profile needs a decomposable or diagonalizable operator");
}

Matrix top_in(const OperatorEntry& op, const QuantizedDomain& domain, const std::string& name) {
  const LocalOperator* t = nullptr;
  if (auto l = std::get_if<LocalOperator>(&op)) t = l;
  if (auto d = std::get_if<DecomposableOperator>(&op)) t = &d->assembled();
  if (auto f = std::get_if<DiagonalizableOperator>(&op)) t = &f->as_decomposable().assembled();
  if (t == nullptr || !(*t->domain() == domain))
    throw Error(ErrorCode::DomainMismatch, "generator " + name + " does not act on the task's domain");
  return t->top_matrix();
}

CheckReport run_commutant(const Scenario& s, const json& params) {
  CheckReport r;
  r.check = "commutant";
  const DomainEntry& d = s.domains.at(params.at("domain").get<std::string>());
  const auto q = quantized_of(d);
  const OperatorSubspace ambient = ambient_basis(*q);
  std::vector<Matrix> gens;
  for (const auto& g : params.value("generators", json::array())) {
    const auto name = g.get<std::string>();
    if (name == "@DIAG") {
      for (auto& m : diag_generators(*dint_of(d))) gens.push_back(m);
    } else if (name == "@DEC") {
      for (auto& m : dec_span(*dint_of(d)).elements()) gens.push_back(m);
    } else if (name == "@identity") {
      gens.push_back(Matrix::Identity(q->ambient_dim(), q->ambient_dim()));
    } else if (!name.empty() && name[0] == '@') {
      throw Error(ErrorCode::UnresolvedReference, "unknown generator set " + name);
    } else {
      gens.push_back(top_in(s.operators.at(name), *q, name));
    }
  }
  const OperatorSubspace m = span_of(gens, q->ambient_dim());
  const OperatorSubspace prime = commutant(gens, ambient);
  const OperatorSubspace second = commutant(prime.elements(), ambient);
  const OperatorSubspace third = commutant(second.elements(), ambient);
  r.dimensions["ambient"] = ambient.dim();
  r.dimensions["M"] = m.dim();
  r.dimensions["M'"] = prime.dim();
  r.dimensions["M''"] = second.dim();
  double commute = 0.0;
  for (const auto& t : prime.elements())
    for (const auto& g : gens)
      commute = std::max(commute, max_abs(t * g - g * t) / (1.0 + operator_norm(t) * operator_norm(g)));
  r.bound("commutator", commute, tol::kEquality);
  double inside = 0.0;
  for (const auto& g : gens) inside = std::max(inside, second.distance(g));
  r.bound("M_in_M''", inside, tol::kEquality);
  const auto triple = compare(third, prime);
  r.bound("M'''_vs_M'", std::max(triple.a_in_b_residual, triple.b_in_a_residual), tol::kEquality);
  r.fail_if(triple.relation != SubspaceRelation::Equal, "M''' differs from M'");
  r.details["M_vs_M''"] = to_string(compare(m, second).relation);
  return r;
}

CheckReport run_interchange(const DintPtr& dint, std::uint64_t seed) {
  Rng rng(seed);
  const auto level = static_cast<DirectedPoset::Index>(rng.between(0, dint->poset().size() - 1));
  const FiberField x = random_field(rng, *dint, level);
  const FiberField y = random_field(rng, *dint, level);
  return check_direct_sum(*dint, x, y);
}

CheckReport run_density(const DintPtr& dint, const json& params, std::uint64_t seed) {
  Rng rng(seed);
  CheckReport r;
  r.check = "density_profile";
  const auto& poset = dint->poset();
  const int count = params.value("count", 1);
  std::optional<DirectedPoset::Index> fixed;
  if (params.contains("level")) fixed = poset.index_of(params.at("level").get<std::string>());
  for (int i = 0; i < count; ++i) {
    const auto level = fixed ? *fixed : static_cast<DirectedPoset::Index>(rng.between(0, poset.size() - 1));
    const auto part = check_defect_profile(*dint, random_field(rng, *dint, level));
    if (count == 1) return part;
    merge_into(r, part, "field" + std::to_string(i));
  }
  r.dimensions["fields"] = count;
  return r;
}

TaskResult timed(std::size_t index, const TaskSpec& t, const RunOptions& opts, const std::function<CheckReport()>& body) {
  TaskResult out;
  out.task_index = index;
  out.task = t.task;
  out.instance = t.params;
  const auto start = std::chrono::steady_clock::now();
  out.check = body();
  if (opts.timings)
    out.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

json caps_json(const Caps& c) { return {{"ambient", c.ambient}, {"atoms", c.atoms}, {"poset", c.poset}}; }

}  // namespace

std::size_t Report::passed() const {
  std::size_t n = 0;
  for (const auto& r : results) n += r.check.pass ? 1 : 0;
  return n;
}

Report run_scenario(const Scenario& s, const RunOptions& opts) {
  Report rep;
  rep.seed = s.seed;
  rep.prng = Rng::kAlgorithm;
  rep.caps = s.caps;
  rep.tolerances = {{"rank", tol::kRank},
                    {"equality", tol::kEquality},
                    {"basis", tol::kBasis},
                    {"reducing", tol::kReducing},
                    {"norm_formula", check_tol::kNormFormula},
                    {"star_square", check_tol::kStarSquare},
                    {"star", check_tol::kStar},
                    {"monotone", check_tol::kMonotone},
                    {"defect", check_tol::kDefect},
                    {"embedding", check_tol::kEmbedding},
                    {"containment", check_tol::kContainment}};
  for (std::size_t i = 0; i < s.tasks.size(); ++i) {
    const TaskSpec& t = s.tasks[i];
    const json& p = t.params;
    const std::uint64_t seed = task_seed(s.seed, i);
    auto domain = [&] { return s.domains.at(p.at("domain").get<std::string>()); };
    auto op = [&]() -> const OperatorEntry& { return s.operators.at(p.at("operator").get<std::string>()); };
    if (t.task == "random_suite") {
      const auto bounds = suite_bounds(p);
      const int count = p.value("count", 100);
      Rng rng(seed);
      for (int k = 0; k < count; ++k) {
        TaskResult res = timed(i, t, opts, [&] { return instance_battery(rng, bounds); });
        res.instance_index = static_cast<std::size_t>(k);
        rep.results.push_back(std::move(res));
      }
      continue;
    }
    rep.results.push_back(timed(i, t, opts, [&]() -> CheckReport {
      if (t.task == "validate") return run_validate(domain());
      if (t.task == "seminorms") return run_seminorms(op(), p);
      if (t.task == "norm_profile") return run_norm_profile(op());
      if (t.task == "commutant") return run_commutant(s, p);
      if (t.task == "verify_dec_diag") return verify_dec_eq_diag_commutant(*dint_of(domain()));
      if (t.task == "verify_projective") {
        ProjectiveOptions o;
        o.seed = seed;
        return verify_dec_projective_system(*dint_of(domain()), o);
      }
      if (t.task == "interchange") return run_interchange(dint_of(domain()), seed);
      return run_density(dint_of(domain()), p, seed);
    }));
  }
  return rep;
}

json report_to_json(const Report& r) {
  json results = json::array();
  for (const auto& t : r.results) {
    json e = to_json(t.check);
    e["task_index"] = t.task_index;
    e["task"] = t.task;
    e["instance"] = t.instance;
    if (t.instance_index) e["instance_index"] = *t.instance_index;
    if (t.elapsed_ms) e["elapsed_ms"] = *t.elapsed_ms;
    results.push_back(std::move(e));
  }
  json tolerances = json::object();
  for (const auto& [k, v] : r.tolerances) tolerances[k] = v;
  return {{"environment", {{"seed", r.seed}, {"prng", r.prng}, {"caps", caps_json(r.caps)}, {"tolerances", tolerances}}},
          {"results", results},
          {"summary", {{"total", r.results.size()}, {"passed", r.passed()}, {"failed", r.failed()}}}};
}

Report report_from_json(const json& j) {
  Report r;
  try {
    const json& env = j.at("environment");
    r.seed = env.at("seed").get<std::uint64_t>();
    r.prng = env.at("prng").get<std::string>();
    r.caps.ambient = env.at("caps").at("ambient").get<long long>();
    r.caps.atoms = env.at("caps").at("atoms").get<long long>();
    r.caps.poset = env.at("caps").at("poset").get<long long>();
    r.tolerances = env.at("tolerances").get<std::map<std::string, double>>();
    for (const auto& e : j.at("results")) {
      TaskResult t;
      t.check = check_report_from_json(e);
      t.task_index = e.at("task_index").get<std::size_t>();
      t.task = e.at("task").get<std::string>();
      t.instance = e.at("instance");
      if (e.contains("instance_index")) t.instance_index = e.at("instance_index").get<std::size_t>();
      if (e.contains("elapsed_ms")) t.elapsed_ms = e.at("elapsed_ms").get<double>();
      r.results.push_back(std::move(t));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed report: ") + e.what());
  }
  return r;
}

namespace {

std::string text_report(const Report& r) {
  std::ostringstream out;
  out << "locint report: seed " << r.seed << ", prng " << r.prng << "\n";
  out << "caps: ambient <= " << r.caps.ambient << ", atoms <= " << r.caps.atoms << ", poset <= " << r.caps.poset
      << "\n";
  out << "tolerances:";
  for (const auto& [k, v] : r.tolerances) out << " " << k << "=" << CheckReport::format_double(v);
  out << "\n\n";
  for (const auto& t : r.results) {
    out << (t.check.pass ? "[PASS] " : "[FAIL] ") << "task " << t.task_index;
    if (t.instance_index) out << "." << *t.instance_index;
    out << " " << t.task << " (" << t.check.check << ")";
    for (const char* key : {"domain", "operator"})
      if (t.instance.is_object() && t.instance.contains(key)) out << " " << key << "=" << t.instance.at(key).get<std::string>();
    if (t.elapsed_ms) out << "  " << CheckReport::format_double(*t.elapsed_ms) << " ms";
    out << "\n";
    if (!t.check.dimensions.empty()) {
      out << "    dimensions\n";
      for (const auto& [k, v] : t.check.dimensions) out << "      " << k << " = " << v << "\n";
    }
    if (!t.check.residuals.empty()) {
      out << "    residuals\n";
      for (const auto& [k, v] : t.check.residuals) out << "      " << k << " = " << CheckReport::format_double(v) << "\n";
    }
    if (!t.check.values.empty()) {
      out << "    values\n";
      for (const auto& [k, v] : t.check.values) out << "      " << k << " = " << CheckReport::format_double(v) << "\n";
    }
    for (const auto& [k, v] : t.check.details) out << "    " << k << ": " << v << "\n";
    for (const auto& n : t.check.notes) out << "    note: " << n << "\n";
  }
  out << "\n" << r.passed() << " passed, " << r.failed() << " failed, " << r.results.size() << " total\n";
  return out.str();
}

}  // namespace

std::string emit_report(const Report& r, ReportFormat format) {
  if (format == ReportFormat::Text) return text_report(r);
  return report_to_json(r).dump(2) + "\n";
}

void write_report(const Report& r, ReportFormat format, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  out << emit_report(r, format);
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path);
}

}  // namespace locint
