#include <doctest.h>

#include "locint/checks.hpp"
#include "locint/commutant.hpp"
#include "locint/random_instances.hpp"
#include "support/expect_error.hpp"
#include "support/oracle.hpp"

using namespace locint;
using locint::testing::code_of;
using locint::testing::oracle_kernel;

namespace {

std::vector<Matrix> level_projections(const QuantizedDomain& d) {
  std::vector<Matrix> out;
  for (std::size_t l = 0; l < d.poset().size(); ++l) out.push_back(d.top_projection(l));
  return out;
}

OperatorSubspace as_subspace(const Matrix& columns, Eigen::Index n) {
  return {n, orthonormal_span(columns, n * n)};
}

SubspaceRelation relation(const OperatorSubspace& a, const OperatorSubspace& b) { return compare(a, b).relation; }

}  // namespace

TEST_CASE("ambient algebra dimensions") {
  auto flag = QuantizedDomain::standard_flag({1, 2});
  CHECK(ambient_basis(flag).dim() == 2);
  CHECK(ambient_basis(QuantizedDomain::trivial(3)).dim() == 9);
  CHECK(ambient_basis(QuantizedDomain::standard_flag({1, 2, 3})).dim() == 3);
  CHECK(oracle_kernel(level_projections(flag), 2).cols() == 2);

  auto dint = two_atom_flag_instance();
  const auto& a = *dint.assembled();
  CHECK(a.ambient_dim() == 4);
  const Matrix oracle = oracle_kernel(level_projections(a), 4);
  CHECK(oracle.cols() == 8);
  auto amb = ambient_basis(a);
  CHECK(amb.dim() == 8);
  CHECK(relation(amb, as_subspace(oracle, 4)) == SubspaceRelation::Equal);
  for (const auto& m : amb.elements()) CHECK(reducing_residual(a, m).residual <= 1e-10);
}

TEST_CASE("named instance: DEC equals DIAG' and matches the oracle") {
  auto dint = two_atom_flag_instance();
  const auto& a = *dint.assembled();
  auto amb = ambient_basis(a);
  auto dec = dec_span(dint);
  auto diag = diag_span(dint);
  auto diag_comm = commutant(diag_generators(dint), amb);
  CHECK(dec.dim() == 4);
  CHECK(diag.dim() == 2);
  CHECK(diag_comm.dim() == 4);

  auto constraints = level_projections(a);
  for (const auto& g : diag_generators(dint)) constraints.push_back(g);
  const Matrix oracle = oracle_kernel(constraints, 4);
  CHECK(oracle.cols() == 4);
  CHECK(relation(diag_comm, as_subspace(oracle, 4)) == SubspaceRelation::Equal);
  CHECK(relation(dec, diag_comm) == SubspaceRelation::Equal);

  auto rep = verify_dec_eq_diag_commutant(dint);
  CHECK(rep.pass);
  CHECK(rep.dimensions.at("ambient") == 8);
  CHECK(rep.dimensions.at("DEC") == 4);
  CHECK(rep.dimensions.at("DIAG") == 2);
  CHECK(rep.dimensions.at("DIAG'") == 4);
  CHECK(rep.dimensions.at("DEC'") == 4);
}

TEST_CASE("commutant of the identity is the ambient algebra") {
  auto dint = two_atom_flag_instance();
  auto amb = ambient_basis(*dint.assembled());
  auto c = commutant({Matrix::Identity(4, 4)}, amb);
  CHECK(relation(c, amb) == SubspaceRelation::Equal);
}

TEST_CASE("double commutant of the identity is the center") {
  // Inside the ambient algebra M2 + M2 of the named instance the bicommutant
  // of the scalars is the center, one unit per atom block.
  auto dint = two_atom_flag_instance();
  const auto& a = *dint.assembled();
  auto amb = ambient_basis(a);
  auto bic = double_commutant({Matrix::Identity(4, 4)}, amb);
  CHECK(bic.dim() == 2);
  auto center = commutant(amb.elements(), amb);
  CHECK(relation(bic, center) == SubspaceRelation::Equal);
  // Oracle: the center commutes with every ambient basis element.
  auto constraints = level_projections(a);
  for (const auto& m : amb.elements()) constraints.push_back(m);
  CHECK(relation(center, as_subspace(oracle_kernel(constraints, 4), 4)) == SubspaceRelation::Equal);
}

TEST_CASE("commutants reverse inclusion, and three primes equal one") {
  Rng rng(404);
  for (int trial = 0; trial < 10; ++trial) {
    auto dint = random_direct_integral(rng, {});
    auto dom = dint.assembled();
    auto amb = ambient_basis(*dom);
    std::vector<Matrix> small{random_local_operator(rng, dom).top_matrix()};
    std::vector<Matrix> big = small;
    big.push_back(random_local_operator(rng, dom).top_matrix());
    auto cs = commutant(small, amb), cb = commutant(big, amb);
    auto rel = relation(cb, cs);
    CHECK((rel == SubspaceRelation::AInsideB || rel == SubspaceRelation::Equal));

    auto c1 = commutant(small, amb);
    auto c3 = commutant(double_commutant(small, amb).elements(), amb);
    CHECK(relation(c1, c3) == SubspaceRelation::Equal);

    auto m = span_of(small, dom->ambient_dim());
    auto mm = double_commutant(small, amb);
    auto inside = relation(m, mm);
    CHECK((inside == SubspaceRelation::AInsideB || inside == SubspaceRelation::Equal));

    for (const auto& t : c1.elements())
      for (const auto& s : small)
        CHECK(operator_norm(t * s - s * t) <= 1e-9 * (1.0 + operator_norm(t) * operator_norm(s)));
  }
}

TEST_CASE("generators outside the ambient algebra are rejected") {
  auto flag = QuantizedDomain::standard_flag({1, 2});
  Matrix nil = Matrix::Zero(2, 2);
  nil(0, 1) = 1.0;
  CHECK(code_of([&] { commutant({nil}, ambient_basis(flag)); }) == ErrorCode::GeneratorOutsideAmbient);
}

TEST_CASE("DEC and DIAG are closed under adjoints") {
  Rng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    auto dint = random_direct_integral(rng, {});
    CHECK(adjoint_closure_residual(dec_span(dint)) <= 1e-9);
    CHECK(adjoint_closure_residual(diag_span(dint)) <= 1e-9);
  }
}

TEST_CASE("DEC equals DIAG' on random counting instances") {
  Rng rng(2718);
  for (int trial = 0; trial < 15; ++trial) {
    auto dint = random_direct_integral(rng, {});
    auto rep = verify_dec_eq_diag_commutant(dint);
    CHECK(rep.pass);
    CHECK(rep.dimensions.at("DEC") == rep.dimensions.at("DIAG'"));
    CHECK(rep.residuals.at("DEC_in_DIAG'") <= 1e-9);
    CHECK(rep.residuals.at("DIAG_in_DEC'") <= 1e-9);
  }
}

TEST_CASE("single atom: DEC is the ambient algebra and DIAG the scalars") {
  DirectIntegralDomain dint(AtomicMeasureSpace::counting(1), {QuantizedDomain::standard_flag({1, 3})});
  auto rep = verify_dec_eq_diag_commutant(dint);
  CHECK(rep.pass);
  CHECK(rep.dimensions.at("DIAG") == 1);
  CHECK(rep.dimensions.at("DEC") == rep.dimensions.at("ambient"));
  CHECK(rep.dimensions.at("DEC") == 5);
}

TEST_CASE("projective system on the named instance") {
  auto dint = two_atom_flag_instance();
  ProjectiveOptions opts;
  opts.seed = 5;
  auto rep = verify_dec_projective_system(dint, opts);
  CHECK(rep.pass);
  for (const auto& [k, v] : rep.residuals) CHECK_MESSAGE(v <= 1e-9, k);
  // DEC_1 is the diagonal 2x2 algebra (one scalar per atom), DEC_2 all of DEC.
  CHECK(rep.dimensions.at("DEC_1") == 2);
  CHECK(rep.dimensions.at("DEC_2") == 4);
}

TEST_CASE("projective check flags a corrupted block") {
  auto dint = two_atom_flag_instance();
  Rng rng(8);
  auto t = random_local_operator(rng, dint.assembled());
  auto blocks = t.blocks();
  blocks[0](0, 0) += 1.0;
  ProjectiveOptions opts;
  opts.seed = 1;
  opts.probe_families = {t.blocks(), blocks};
  auto rep = verify_dec_projective_system(dint, opts);
  CHECK_FALSE(rep.pass);
  CHECK(rep.residuals.at("probe_compatibility") >= 0.5);
}

TEST_CASE("projective system on random instances") {
  Rng rng(31337);
  for (int trial = 0; trial < 10; ++trial) {
    auto dint = random_direct_integral(rng, {});
    ProjectiveOptions opts;
    opts.seed = rng.next();
    CHECK(verify_dec_projective_system(dint, opts).pass);
  }
}
