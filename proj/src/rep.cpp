#include "cxone/rep.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "cxone/error.hpp"

namespace cxone {

SubtorusRep SubtorusRep::from_image(IntMatrix weights) {
  SubtorusRep rep;
  rep.presentation_ = Presentation::Image;
  rep.n_ = weights.cols();
  rep.h_ = weights.rows();
  rep.matrix_ = weights;
  rep.weights_ = weights;
  rep.relations_ = lattice_kernel(weights).transpose();
  // (S^1)^h -> (S^1)^n is injective iff the weight columns generate Z^h.
  SmithForm s = smith_normal_form(weights);
  IntVector f = s.invariant_factors();
  rep.effective_ = f.size() == rep.h_ && std::all_of(f.begin(), f.end(), [](const Integer& d) { return d == 1; });
  return rep;
}

SubtorusRep SubtorusRep::from_kernel(IntMatrix relations) {
  if (rank(relations) != relations.rows())
    throw DomainError("InvalidPresentation", "kernel presentation requires a full-row-rank relation matrix");
  SubtorusRep rep;
  rep.presentation_ = Presentation::Kernel;
  rep.n_ = relations.cols();
  rep.h_ = rep.n_ - relations.rows();
  rep.matrix_ = relations;
  rep.relations_ = relations;
  rep.weights_ = lattice_kernel(relations).transpose();
  rep.effective_ = true;
  return rep;
}

IntVector SubtorusRep::component_orders() const {
  IntVector out;
  if (relations_.rows() == 0) return out;
  for (const auto& d : smith_normal_form(relations_).invariant_factors())
    if (d != 1) out.push_back(d);
  return out;
}

namespace {

Complex monomial(const ComplexVector& z, const IntVector& exps) {
  double log_mag = 0.0, phase = 0.0;
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (exps[j] == 0) continue;
    const double a = std::abs(z[j]);
    if (a == 0.0) return {0.0, 0.0};
    const double e = exps[j].get_d();
    log_mag += e * std::log(a);
    phase += e * std::arg(z[j]);
  }
  return std::polar(std::exp(log_mag), std::remainder(phase, 2.0 * M_PI));
}

void require_effective(const SubtorusRep& rep) {
  if (!rep.effective())
    throw DomainError("Ineffective", "the weights do not generate the weight lattice; the action is not effective");
}

}  // namespace

bool DefiningPolynomial::all_positive() const {
  return std::all_of(exponents.begin(), exponents.end(), [](const Integer& x) { return x > 0; });
}

Complex DefiningPolynomial::evaluate(const ComplexVector& z) const {
  if (z.size() != exponents.size()) throw DomainError("DimensionMismatch", "P(z): length of z differs from n");
  return monomial(z, exponents);
}

ComplexVector DefiningPolynomial::gradient(const ComplexVector& z) const {
  if (z.size() != exponents.size()) throw DomainError("DimensionMismatch", "dP(z): length of z differs from n");
  ComplexVector g(z.size(), Complex(0.0, 0.0));
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (exponents[j] == 0) continue;
    IntVector e = exponents;
    e[j] -= 1;
    g[j] = exponents[j].get_d() * monomial(z, e);
  }
  return g;
}

std::vector<double> moment_eval(const SubtorusRep& rep, const ComplexVector& z) {
  if (z.size() != rep.n())
    throw DomainError("DimensionMismatch", "moment_eval: expected " + std::to_string(rep.n()) + " coordinates");
  const IntMatrix& w = rep.weights();
  std::vector<double> out(rep.h(), 0.0);
  for (std::size_t j = 0; j < rep.n(); ++j) {
    const double r2 = std::norm(z[j]);
    for (std::size_t a = 0; a < rep.h(); ++a) out[a] += 0.5 * r2 * w(a, j).get_d();
  }
  return out;
}

bool is_onto(const SubtorusRep& rep) {
  require_effective(rep);
  return exists_sign_relation(rep.weights(), SignRegime::StrictPositive).feasible;
}

bool is_proper(const SubtorusRep& rep) {
  require_effective(rep);
  return !exists_sign_relation(rep.weights(), SignRegime::NonnegNonzero).feasible;
}

DefiningPolynomial defining_polynomial(const SubtorusRep& rep) {
  require_effective(rep);
  if (rep.h() + 1 != rep.n())
    throw DomainError("NotComplexityOne", "defining polynomial needs dim H = n - 1 (got h=" + std::to_string(rep.h()) +
                                              ", n=" + std::to_string(rep.n()) + ")");
  if (!exists_sign_relation(rep.weights(), SignRegime::NonnegNonzero).feasible)
    throw DomainError("NotNonProper", "the moment map is proper; no nonnegative relation among the weights");

  IntMatrix k = lattice_kernel(rep.weights());
  if (k.cols() != 1) throw DomainError("NotComplexityOne", "weights do not have a rank-one relation lattice");
  IntVector xi = k.column(0);
  const bool has_pos = std::any_of(xi.begin(), xi.end(), [](const Integer& x) { return x > 0; });
  const bool has_neg = std::any_of(xi.begin(), xi.end(), [](const Integer& x) { return x < 0; });
  if (has_pos && has_neg) throw DomainError("NotNonProper", "relation generator has mixed signs");
  if (has_neg)
    for (auto& x : xi) x = -x;

  // Exactness of 1 -> H -> (S^1)^n -> S^1 -> 1: ker P must equal H.
  if (!same_row_lattice(rep.relations(), IntMatrix::from_rows({xi}, rep.n())))
    throw DomainError("ExactnessFailure", "H is not the kernel of the primitive character xi (H is disconnected)");
  return DefiningPolynomial{std::move(xi)};
}

Splitting split(const SubtorusRep& rep) {
  DefiningPolynomial p = defining_polynomial(rep);
  Splitting s;
  for (std::size_t j = 0; j < rep.n(); ++j)
    if (p.exponents[j] > 0) s.permutation.push_back(j);
  const std::size_t positive = s.permutation.size();
  for (std::size_t j = 0; j < rep.n(); ++j)
    if (p.exponents[j] == 0) s.permutation.push_back(j);

  IntVector xi_prime;
  for (std::size_t k = 0; k < positive; ++k) xi_prime.push_back(p.exponents[s.permutation[k]]);
  s.h_prime = positive - 1;
  s.h_double_prime = rep.n() - positive;
  s.onto_part = SubtorusRep::from_kernel(IntMatrix::from_rows({xi_prime}, positive));
  s.toric_part = SubtorusRep::from_image(IntMatrix::identity(s.h_double_prime));
  s.onto_polynomial = DefiningPolynomial{xi_prime};
  if (!is_onto(s.onto_part))
    throw std::logic_error("split: the positive block of xi does not give a surjective moment map");
  return s;
}

bool splitting_reassembles(const SubtorusRep& rep, const Splitting& s) {
  // Relations of H' x H'' in permuted coordinates: those of H' padded with
  // zeros (H'' is a full torus and contributes none). Undo the permutation.
  const std::size_t n = rep.n();
  const IntMatrix& rp = s.onto_part.relations();
  IntMatrix back(rp.rows(), n);
  for (std::size_t r = 0; r < rp.rows(); ++r)
    for (std::size_t k = 0; k < rp.cols(); ++k) back(r, s.permutation[k]) = rp(r, k);
  return same_row_lattice(back, rep.relations()) && s.h_prime + s.h_double_prime == rep.h();
}

StabilizerInfo stabilizer(const SubtorusRep& rep, const IndexSet& support) {
  const std::size_t n = rep.n();
  IntMatrix rel = rep.relations();
  std::vector<IntVector> fixed;
  for (std::size_t j : support) {
    if (j >= n) throw DomainError("DimensionMismatch", "support index out of range");
    IntVector e(n, Integer(0));
    e[j] = 1;
    fixed.push_back(std::move(e));
  }
  IntMatrix all = rel.stacked(IntMatrix::from_rows(fixed, n));
  StabilizerInfo info;
  if (all.rows() == 0) {
    info.dimension = n;
    return info;
  }
  SmithForm snf = smith_normal_form(all);
  IntVector f = snf.invariant_factors();
  info.dimension = n - f.size();
  for (const auto& d : f)
    if (d != 1) info.component_group.push_back(d);
  return info;
}

bool is_exceptional_orbit(const SubtorusRep& rep, const IndexSet& support) {
  DefiningPolynomial p = defining_polynomial(rep);
  if (!p.all_positive())
    throw DomainError("NotSurjective", "exceptional-orbit criterion applies to the surjective part; split first");
  std::vector<bool> in(rep.n(), false);
  for (std::size_t j : support) {
    if (j >= rep.n()) throw DomainError("DimensionMismatch", "support index out of range");
    in[j] = true;
  }
  std::vector<std::size_t> missing;
  for (std::size_t j = 0; j < rep.n(); ++j)
    if (!in[j]) missing.push_back(j);
  const bool non_exceptional = missing.empty() || (missing.size() == 1 && p.exponents[missing[0]] == 1);

  // Over the interior the non-exceptional orbits are exactly the free ones.
  if (non_exceptional != stabilizer(rep, support).is_trivial())
    throw std::logic_error("is_exceptional_orbit: combinatorial criterion disagrees with stabilizer");
  return !non_exceptional;
}

IndexSet full_support(std::size_t n) {
  IndexSet s(n);
  std::iota(s.begin(), s.end(), std::size_t{0});
  return s;
}

IndexSet support_of(const ComplexVector& z) {
  IndexSet s;
  for (std::size_t j = 0; j < z.size(); ++j)
    if (z[j] != Complex(0.0, 0.0)) s.push_back(j);
  return s;
}

}  // namespace cxone
