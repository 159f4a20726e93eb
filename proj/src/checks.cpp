#include "locint/checks.hpp"

#include <algorithm>
#include <cmath>

namespace locint {

void merge_into(CheckReport& into, const CheckReport& part, const std::string& prefix) {
  for (const auto& [k, v] : part.dimensions) into.dimensions[prefix + "." + k] = v;
  for (const auto& [k, v] : part.residuals) into.residuals[prefix + "." + k] = v;
  for (const auto& [k, v] : part.values) into.values[prefix + "." + k] = v;
  for (const auto& [k, v] : part.details) into.details[prefix + "." + k] = v;
  for (const auto& n : part.notes) into.notes.push_back(prefix + ": " + n);
  if (!part.pass) into.pass = false;
}

CheckReport check_norm_formula(const DecomposableOperator& t) {
  CheckReport r;
  r.check = "norm_formula";
  for (const auto& e : dec_norm_profile(t)) {
    r.values["formula." + e.level] = e.formula;
    r.values["assembled." + e.level] = e.assembled;
    r.bound("difference", e.difference, check_tol::kNormFormula);
  }
  return r;
}

CheckReport check_seminorm_laws(const LocalOperator& t, const LocalOperator& s) {
  CheckReport r;
  r.check = "seminorm_laws";
  const auto& poset = t.domain()->poset();
  const LocalOperator ts = adjoint(t);
  const LocalOperator tst = compose(ts, t);
  const LocalOperator prod = compose(t, s);
  const LocalOperator sum = add(t, s);
  std::vector<double> p(poset.size());
  for (std::size_t a = 0; a < poset.size(); ++a) {
    const double pt = uniform_seminorm(t, a);
    const double ps = uniform_seminorm(s, a);
    p[a] = pt;
    r.values["p." + poset.label(a)] = pt;
    r.bound("star", std::abs(uniform_seminorm(ts, a) - pt), check_tol::kStar);
    r.bound("star_square_relative", std::abs(uniform_seminorm(tst, a) - pt * pt) / std::max(1.0, pt * pt),
            check_tol::kStarSquare);
    const double scale = std::max(1.0, pt * ps);
    r.bound("submultiplicative_excess", std::max(0.0, uniform_seminorm(prod, a) - pt * ps) / scale, 1e-12);
    r.bound("triangle_excess", std::max(0.0, uniform_seminorm(sum, a) - pt - ps) / std::max(1.0, pt + ps), 1e-12);
  }
  for (auto [a, b] : poset.order_pairs()) r.bound("monotone_excess", std::max(0.0, p[a] - p[b]), check_tol::kMonotone);
  return r;
}

std::vector<DirectedPoset::Index> chain_through(const DirectedPoset& poset, DirectedPoset::Index level) {
  std::vector<DirectedPoset::Index> down;
  for (auto at = level; at != poset.size(); at = poset.parent(at)) down.push_back(at);
  std::reverse(down.begin(), down.end());
  auto cover_above = [&](DirectedPoset::Index a) {
    for (auto [lo, hi] : poset.cover_pairs())
      if (lo == a) return hi;
    return poset.size();
  };
  for (auto at = cover_above(level); at != poset.size(); at = cover_above(at)) down.push_back(at);
  return down;
}

CheckReport check_defect_profile(const DirectIntegralDomain& dint, const FiberField& x) {
  CheckReport r;
  r.check = "density_profile";
  const auto& poset = dint.poset();
  const auto chain = chain_through(poset, x.level);
  const auto profile = projection_defect_profile(dint, x, chain);
  const auto cross = assembled_defect_profile(dint, x, chain);
  std::string labels;
  double scale = 1.0;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    labels += (i ? "," : "") + poset.label(chain[i]);
    r.values["defect." + poset.label(chain[i])] = profile[i];
    scale = std::max(scale, profile[i]);
  }
  r.details["chain"] = labels;
  r.details["level"] = poset.label(x.level);
  double increase = 0.0;
  for (std::size_t i = 1; i < profile.size(); ++i) increase = std::max(increase, profile[i] - profile[i - 1]);
  r.bound("nonincreasing_violation", increase, check_tol::kDefect);
  bool prefix_everywhere = true;
  for (const auto& f : dint.fibers()) prefix_everywhere = prefix_everywhere && f.is_prefix(x.level, f.top());
  const auto own = static_cast<std::size_t>(std::find(chain.begin(), chain.end(), x.level) - chain.begin());
  r.residuals["own_level_defect"] = profile[own];
  if (prefix_everywhere) {
    r.fail_if(profile[own] != 0.0, "defect at the field's own level is not exactly zero");
  } else {
    r.notes.push_back("own level is not a prefix of the top in every fiber; zero checked to tolerance");
    r.bound("own_level_defect", profile[own], check_tol::kDefect);
  }
  double diff = 0.0;
  for (std::size_t i = 0; i < profile.size(); ++i) diff = std::max(diff, std::abs(profile[i] - cross[i]));
  r.bound("assembled_cross_check", diff / scale, 1e-12);
  return r;
}

CheckReport check_direct_sum(const DirectIntegralDomain& dint, const FiberField& x, const FiberField& y) {
  CheckReport r;
  r.check = "interchange";
  const auto report = interchange_check(dint);
  for (const auto& row : report.levels) {
    r.dimensions["union_of_integrals." + row.level] = row.dim_union_of_integrals;
    r.dimensions["integral_of_unions." + row.level] = row.dim_integral_of_unions;
    r.fail_if(row.dim_union_of_integrals != row.dim_integral_of_unions, "dimension mismatch at level " + row.level);
  }
  r.residuals["interchange"] = report.max_residual;
  r.fail_if(report.max_residual != 0.0, "interchange residual is not zero");
  for (const auto& v : report.canonical_violations) r.fail_if(true, "canonical form violated at " + v);
  r.fail_if(!report.pass, "interchange check failed");

  r.details["counting_measure"] = dint.measure().is_counting() ? "true" : "false";
  if (dint.measure().is_counting()) {
    // Plain direct sum: concatenation of components, unweighted inner product.
    const Vector assembled = dint.to_assembled(x);
    Vector concat(assembled.size());
    Eigen::Index at = 0;
    Complex plain = 0.0;
    for (std::size_t p = 0; p < dint.atom_count(); ++p) {
      concat.segment(at, x.components[p].size()) = x.components[p];
      at += x.components[p].size();
      plain += x.components[p].dot(y.components[p]);
    }
    const double concat_residual = assembled.size() ? (assembled - concat).cwiseAbs().maxCoeff() : 0.0;
    r.residuals["direct_sum_coordinates"] = concat_residual;
    r.fail_if(concat_residual != 0.0, "assembled coordinates differ from the direct sum");
    const double ip = std::abs(inner_product(dint, x, y) - plain);
    r.residuals["direct_sum_inner_product"] = ip;
    r.fail_if(ip != 0.0, "inner product differs from the direct sum inner product");
    const double scale = std::max(1.0, x.components.empty() ? 1.0 : concat.norm() * dint.to_assembled(y).norm());
    r.bound("assembled_inner_product", std::abs(assembled.dot(dint.to_assembled(y)) - plain) / scale, 1e-12);
  }
  return r;
}

CheckReport check_containments(const DirectIntegralDomain& dint) {
  CheckReport r;
  r.check = "containments";
  const OperatorSubspace ambient = ambient_basis(*dint.assembled());
  const OperatorSubspace dec = dec_span(dint);
  const auto diag = diag_generators(dint);
  const OperatorSubspace diag_prime = commutant(diag, ambient);
  const OperatorSubspace dec_prime = commutant(dec.elements(), ambient);
  r.dimensions["DEC"] = dec.dim();
  r.dimensions["DIAG'"] = diag_prime.dim();
  r.dimensions["DEC'"] = dec_prime.dim();
  double dec_in = 0.0, diag_in = 0.0;
  for (const auto& m : dec.elements()) dec_in = std::max(dec_in, diag_prime.distance(m));
  for (const auto& m : diag) diag_in = std::max(diag_in, dec_prime.distance(m));
  r.bound("DEC_in_DIAG'", dec_in, check_tol::kContainment);
  r.bound("DIAG_in_DEC'", diag_in, check_tol::kContainment);
  return r;
}

CheckReport check_embedding(const DintPtr& dint, const std::vector<Complex>& f, const std::vector<Complex>& g) {
  CheckReport r;
  r.check = "abelian_embedding";
  const std::size_t atoms = dint->atom_count();
  std::vector<Complex> fg(atoms), fbar(atoms);
  for (std::size_t p = 0; p < atoms; ++p) {
    fg[p] = f[p] * g[p];
    fbar[p] = std::conj(f[p]);
  }
  const Matrix pf = embed_phi(DiagonalizableOperator::from_function(dint, f));
  const Matrix pg = embed_phi(DiagonalizableOperator::from_function(dint, g));
  const Matrix pfg = embed_phi(DiagonalizableOperator::from_function(dint, fg));
  const Matrix pfbar = embed_phi(DiagonalizableOperator::from_function(dint, fbar));
  r.bound("multiplicative", max_abs(pfg - pf * pg), check_tol::kEmbedding);
  r.bound("adjoint", max_abs(pfbar - pf.adjoint()), check_tol::kEmbedding);
  r.bound("commutative", max_abs(pf * pg - pg * pf), check_tol::kEmbedding);

  // Kernel of Phi restricted to the atoms whose fibers are nonzero.
  std::vector<std::size_t> live;
  for (std::size_t p = 0; p < atoms; ++p)
    if (dint->fiber(p).ambient_dim() > 0) live.push_back(p);
  r.dimensions["atoms_with_nonzero_fiber"] = static_cast<long long>(live.size());
  const Eigen::Index n = dint->assembled()->ambient_dim();
  Matrix images(n * n, static_cast<Eigen::Index>(live.size()));
  for (std::size_t i = 0; i < live.size(); ++i) {
    std::vector<Complex> indicator(atoms, 0.0);
    indicator[live[i]] = 1.0;
    images.col(static_cast<Eigen::Index>(i)) = vectorize(embed_phi(DiagonalizableOperator::from_function(dint, indicator)));
  }
  const auto kernel = live.empty() ? 0 : null_space_basis(images, tol::kRank).dim();
  r.dimensions["kernel"] = kernel;
  r.fail_if(kernel != 0, "Phi has a nontrivial kernel");
  double sup = 0.0;
  for (auto p : live) sup = std::max(sup, std::abs(f[p]));
  r.bound("isometry", std::abs(operator_norm(pf) - sup), check_tol::kEmbedding);
  return r;
}

DirectIntegralDomain two_atom_flag_instance() {
  const auto fiber = QuantizedDomain::standard_flag({1, 2});
  return DirectIntegralDomain(AtomicMeasureSpace::counting(std::vector<std::string>{"1", "2"}), {fiber, fiber});
}

CheckReport instance_battery(Rng& rng, const InstanceBounds& bounds) {
  CheckReport r;
  r.check = "random_instance";
  auto dint = std::make_shared<const DirectIntegralDomain>(random_direct_integral(rng, bounds));
  const auto& poset = dint->poset();
  r.dimensions["atoms"] = static_cast<long long>(dint->atom_count());
  r.dimensions["poset_size"] = static_cast<long long>(poset.size());
  r.dimensions["ambient"] = dint->assembled()->ambient_dim();
  r.details["poset"] = poset.is_chain(poset.linear_extension()) ? "chain" : "diamond";
  std::string dims;
  for (std::size_t p = 0; p < dint->atom_count(); ++p) {
    dims += p ? ";" : "";
    for (std::size_t a = 0; a < poset.size(); ++a) dims += (a ? "," : "") + std::to_string(dint->fiber(p).dim(a));
  }
  r.details["fiber_dims"] = dims;

  merge_into(r, verify_dec_eq_diag_commutant(*dint), "dec_diag");
  ProjectiveOptions opts;
  opts.seed = rng.next();
  merge_into(r, verify_dec_projective_system(*dint, opts), "projective");
  merge_into(r, check_norm_formula(random_decomposable(rng, dint)), "norm_formula");
  const auto& assembled = dint->assembled();
  merge_into(r, check_seminorm_laws(random_local_operator(rng, assembled), random_local_operator(rng, assembled)),
             "seminorms");
  const auto level = static_cast<DirectedPoset::Index>(rng.between(0, poset.size() - 1));
  merge_into(r, check_defect_profile(*dint, random_field(rng, *dint, level)), "density_profile");
  const FiberField x = random_field(rng, *dint, level);
  const FiberField y = random_field(rng, *dint, level);
  merge_into(r, check_direct_sum(*dint, x, y), "interchange");
  merge_into(r, check_containments(*dint), "containments");
  const auto f = random_function(rng, dint->atom_count());
  const auto g = random_function(rng, dint->atom_count());
  merge_into(r, check_embedding(dint, f, g), "embedding");
  return r;
}

}  // namespace locint
