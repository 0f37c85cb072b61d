#include "cxone/local_model.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "cxone/error.hpp"
#include "sharding.hpp"

namespace cxone {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// Inverse of a small nonsingular rational matrix by Gauss-Jordan elimination.
std::vector<RationalVector> rational_inverse(std::vector<RationalVector> a) {
  const std::size_t n = a.size();
  std::vector<RationalVector> inv(n, RationalVector(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw std::logic_error("rational_inverse: singular matrix");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    Rational f = 1 / a[c][c];
    for (std::size_t k = 0; k < n; ++k) {
      a[c][k] *= f;
      inv[c][k] *= f;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational g = a[r][c];
      for (std::size_t k = 0; k < n; ++k) {
        a[r][k] -= g * a[c][k];
        inv[r][k] -= g * inv[c][k];
      }
    }
  }
  return inv;
}

std::vector<double> to_double(const RationalVector& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].get_d();
  return out;
}

}  // namespace

LocalModel::LocalModel(std::size_t d, SubtorusRep rep, RationalVector alpha, IntMatrix h0_basis)
    : d_(d), rep_(std::move(rep)), alpha_(std::move(alpha)), h0_basis_(std::move(h0_basis)) {
  const std::size_t h = rep_.h();
  if (h > d_) throw DomainError("InvalidModel", "dim H exceeds the torus dimension d");
  if (alpha_.size() != d_) throw DomainError("InvalidModel", "alpha must have d entries");
  if (h0_basis_.rows() == 0) h0_basis_ = IntMatrix(0, d_);
  if (h0_basis_.cols() != d_) throw DomainError("InvalidModel", "h0 basis vectors must have d entries");
  if (h0_basis_.rows() != d_ - h || rank(h0_basis_) != d_ - h)
    throw DomainError("InvalidModel", "h0 basis must consist of d - h independent vectors");

  h_basis_ = h0_basis_.rows() == 0 ? IntMatrix::identity(d_) : lattice_kernel(h0_basis_);

  // E = K (K^T K)^{-1}: the vector in h dual to eta under the dot product.
  std::vector<RationalVector> gram(h, RationalVector(h, Rational(0)));
  for (std::size_t a = 0; a < h; ++a)
    for (std::size_t b = 0; b < h; ++b)
      for (std::size_t r = 0; r < d_; ++r) gram[a][b] += Rational(h_basis_(r, a) * h_basis_(r, b));
  auto ginv = rational_inverse(gram);
  embedding_.assign(d_, RationalVector(h, Rational(0)));
  for (std::size_t r = 0; r < d_; ++r)
    for (std::size_t b = 0; b < h; ++b)
      for (std::size_t a = 0; a < h; ++a) embedding_[r][b] += Rational(h_basis_(r, a)) * ginv[a][b];
}

RationalVector LocalModel::embed(const RationalVector& eta) const {
  if (eta.size() != rep_.h()) throw DomainError("DimensionMismatch", "embed: expected an element of h*");
  RationalVector out(d_, Rational(0));
  for (std::size_t r = 0; r < d_; ++r)
    for (std::size_t b = 0; b < eta.size(); ++b) out[r] += embedding_[r][b] * eta[b];
  return out;
}

std::vector<double> LocalModel::embed(const std::vector<double>& eta) const {
  if (eta.size() != rep_.h()) throw DomainError("DimensionMismatch", "embed: expected an element of h*");
  std::vector<double> out(d_, 0.0);
  for (std::size_t r = 0; r < d_; ++r)
    for (std::size_t b = 0; b < eta.size(); ++b) out[r] += embedding_[r][b].get_d() * eta[b];
  return out;
}

std::vector<double> LocalModel::restrict_to_h(const std::vector<double>& beta) const {
  if (beta.size() != d_) throw DomainError("DimensionMismatch", "restrict_to_h: expected an element of t*");
  std::vector<double> out(rep_.h(), 0.0);
  for (std::size_t a = 0; a < rep_.h(); ++a)
    for (std::size_t r = 0; r < d_; ++r) out[a] += h_basis_(r, a).get_d() * beta[r];
  return out;
}

bool LocalModel::in_h0(const RationalVector& nu) const {
  if (nu.size() != d_) return false;
  for (std::size_t a = 0; a < h_basis_.cols(); ++a) {
    Rational s = 0;
    for (std::size_t r = 0; r < d_; ++r) s += Rational(h_basis_(r, a)) * nu[r];
    if (s != 0) return false;
  }
  return true;
}

ConeMembership DelzantCone::contains(const RationalVector& point) const {
  const std::size_t d = apex.size();
  if (point.size() != d) throw DomainError("DimensionMismatch", "cone membership: point has wrong dimension");
  IntMatrix gens(d, rays.cols() + 2 * lineality.cols());
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t j = 0; j < rays.cols(); ++j) gens(r, j) = rays(r, j);
    for (std::size_t j = 0; j < lineality.cols(); ++j) {
      gens(r, rays.cols() + 2 * j) = lineality(r, j);
      gens(r, rays.cols() + 2 * j + 1) = -lineality(r, j);
    }
  }
  RationalVector shifted(d);
  for (std::size_t r = 0; r < d; ++r) shifted[r] = point[r] - apex[r];
  return cone_member(shifted, gens);
}

DelzantCone moment_image(const LocalModel& model) {
  const SubtorusRep& rep = model.rep();
  DelzantCone cone;
  cone.apex = model.alpha();
  cone.rays = IntMatrix(model.d(), rep.n());
  for (std::size_t j = 0; j < rep.n(); ++j) {
    IntVector ray = primitive_integer_multiple(model.embed(to_rational(rep.weights().column(j))));
    for (std::size_t r = 0; r < model.d(); ++r) cone.rays(r, j) = ray[r];
  }
  cone.lineality = model.h0_basis().transpose();
  return cone;
}

std::string to_string(FiberType f) {
  return f == FiberType::SingleOrbit ? "single-orbit" : "infinitely-many-orbits";
}

FiberType classify_fiber(const LocalModel& model) {
  return is_proper(model.rep()) ? FiberType::SingleOrbit : FiberType::InfinitelyManyOrbits;
}

namespace {

// Floating-point data derived once per model for the numeric checks.
struct Numerics {
  std::size_t n = 0, h = 0, d = 0;
  DefiningPolynomial poly;
  std::vector<double> xi;
  Eigen::MatrixXd weights;   // h x n
  Eigen::MatrixXd orbit_k;   // n x h, H = { exp(2 pi i K c) }
  std::vector<double> alpha;
};

Numerics prepare(const LocalModel& model) {
  if (classify_fiber(model) == FiberType::SingleOrbit)
    throw DomainError("ProperMomentMap", "moment fibers are single orbits; the trivializing map is not defined");
  Numerics num;
  const SubtorusRep& rep = model.rep();
  num.n = rep.n();
  num.h = rep.h();
  num.d = model.d();
  num.poly = defining_polynomial(rep);
  for (const auto& x : num.poly.exponents) num.xi.push_back(x.get_d());
  num.weights.resize(static_cast<Eigen::Index>(num.h), static_cast<Eigen::Index>(num.n));
  for (std::size_t a = 0; a < num.h; ++a)
    for (std::size_t j = 0; j < num.n; ++j) num.weights(a, j) = rep.weights()(a, j).get_d();
  IntMatrix k = lattice_kernel(IntMatrix::from_rows({num.poly.exponents}, num.n));
  num.orbit_k.resize(static_cast<Eigen::Index>(num.n), static_cast<Eigen::Index>(k.cols()));
  for (std::size_t j = 0; j < num.n; ++j)
    for (std::size_t c = 0; c < k.cols(); ++c) num.orbit_k(j, c) = k(j, c).get_d();
  num.alpha = to_double(model.alpha());
  return num;
}

std::vector<double> phi_h(const Numerics& num, const ComplexVector& z) {
  std::vector<double> out(num.h, 0.0);
  for (std::size_t j = 0; j < num.n; ++j) {
    const double r2 = std::norm(z[j]);
    for (std::size_t a = 0; a < num.h; ++a) out[a] += 0.5 * r2 * num.weights(a, j);
  }
  return out;
}

QuotientPoint evaluate_f(const LocalModel& model, const Numerics& num, const ComplexVector& z,
                         const std::vector<double>& nu) {
  if (z.size() != num.n) throw DomainError("DimensionMismatch", "z must have n coordinates");
  if (nu.size() != num.d) throw DomainError("DimensionMismatch", "nu must have d coordinates");
  QuotientPoint q;
  q.moment = model.embed(phi_h(num, z));
  for (std::size_t r = 0; r < num.d; ++r) q.moment[r] += num.alpha[r] + nu[r];
  q.p = num.poly.evaluate(z);
  return q;
}

double f_distance(const QuotientPoint& a, const QuotientPoint& b) {
  double e = std::abs(a.p - b.p);
  for (std::size_t r = 0; r < a.moment.size(); ++r) e = std::max(e, std::abs(a.moment[r] - b.moment[r]));
  return e;
}

ComplexVector act(const Numerics& num, const std::vector<double>& c, const ComplexVector& z) {
  ComplexVector out(z);
  for (std::size_t j = 0; j < num.n; ++j) {
    double phase = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) phase += num.orbit_k(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) * c[k];
    out[j] *= std::polar(1.0, kTwoPi * phase);
  }
  return out;
}

double squared_distance(const ComplexVector& a, const ComplexVector& b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += std::norm(a[j] - b[j]);
  return s;
}

std::size_t grid_resolution(std::size_t h) {
  switch (h) {
    case 0: return 1;
    case 1: return 1000;
    case 2: return 64;
    case 3: return 16;
    default: throw DomainError("TooLarge", "orbit search supports dim H <= 3");
  }
}

// Gauss-Newton on c -> |exp(2 pi i K c) z - z'|^2 from a starting point.
double refine(const Numerics& num, std::vector<double> c, const ComplexVector& z, const ComplexVector& zp) {
  const auto n = static_cast<Eigen::Index>(num.n);
  const auto h = static_cast<Eigen::Index>(c.size());
  double best = squared_distance(act(num, c, z), zp);
  for (int iter = 0; iter < 40 && best > 0.0; ++iter) {
    ComplexVector w = act(num, c, z);
    Eigen::VectorXd res(2 * n);
    Eigen::MatrixXd jac(2 * n, h);
    for (Eigen::Index j = 0; j < n; ++j) {
      const Complex r = w[static_cast<std::size_t>(j)] - zp[static_cast<std::size_t>(j)];
      res(2 * j) = r.real();
      res(2 * j + 1) = r.imag();
      for (Eigen::Index k = 0; k < h; ++k) {
        const Complex dj = Complex(0.0, kTwoPi * num.orbit_k(j, k)) * w[static_cast<std::size_t>(j)];
        jac(2 * j, k) = dj.real();
        jac(2 * j + 1, k) = dj.imag();
      }
    }
    Eigen::VectorXd step = jac.completeOrthogonalDecomposition().solve(-res);
    std::vector<double> trial(c);
    for (Eigen::Index k = 0; k < h; ++k) trial[static_cast<std::size_t>(k)] += step(k);
    const double value = squared_distance(act(num, trial, z), zp);
    if (!(value < best)) break;
    best = value;
    c = std::move(trial);
  }
  return best;
}

double orbit_distance_impl(const Numerics& num, const ComplexVector& z, const ComplexVector& zp) {
  const std::size_t h = static_cast<std::size_t>(num.orbit_k.cols());
  if (h == 0) return std::sqrt(squared_distance(z, zp));
  const std::size_t g = grid_resolution(h);

  // unit[j][k][s] = exp(2 pi i K_jk s / g)
  std::vector<std::vector<ComplexVector>> unit(num.n, std::vector<ComplexVector>(h, ComplexVector(g)));
  for (std::size_t j = 0; j < num.n; ++j)
    for (std::size_t k = 0; k < h; ++k)
      for (std::size_t s = 0; s < g; ++s)
        unit[j][k][s] = std::polar(1.0, kTwoPi * num.orbit_k(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) *
                                             static_cast<double>(s) / static_cast<double>(g));

  constexpr std::size_t kStarts = 4;
  std::vector<std::pair<double, std::size_t>> best;  // (value, flat grid index)
  std::size_t total = 1;
  for (std::size_t k = 0; k < h; ++k) total *= g;
  std::vector<std::size_t> idx(h, 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    for (std::size_t k = 0; k < h; ++k) {
      idx[k] = rest % g;
      rest /= g;
    }
    double v = 0.0;
    for (std::size_t j = 0; j < num.n; ++j) {
      Complex lam = unit[j][0][idx[0]];
      for (std::size_t k = 1; k < h; ++k) lam *= unit[j][k][idx[k]];
      v += std::norm(lam * z[j] - zp[j]);
    }
    if (best.size() < kStarts || v < best.back().first) {
      best.emplace_back(v, flat);
      std::sort(best.begin(), best.end());
      if (best.size() > kStarts) best.pop_back();
    }
  }

  double result = std::numeric_limits<double>::infinity();
  for (const auto& [value, flat] : best) {
    std::vector<double> c(h);
    std::size_t rest = flat;
    for (std::size_t k = 0; k < h; ++k) {
      c[k] = static_cast<double>(rest % g) / static_cast<double>(g);
      rest /= g;
    }
    result = std::min(result, refine(num, c, z, zp));
  }
  return std::sqrt(result);
}

std::optional<ComplexVector> preimage_impl(const Numerics& num, const std::vector<double>& a, Complex zeta) {
  const auto n = static_cast<Eigen::Index>(num.n);
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(n);
  if (num.h > 0) {
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(num.h));
    for (std::size_t i = 0; i < num.h; ++i) rhs(static_cast<Eigen::Index>(i)) = 2.0 * a[i];
    x0 = num.weights.completeOrthogonalDecomposition().solve(rhs);
  }
  // Slide along xi to the boundary of the orthant.
  double shift = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < n; ++j)
    if (num.xi[static_cast<std::size_t>(j)] > 0) shift = std::min(shift, x0(j) / num.xi[static_cast<std::size_t>(j)]);
  std::vector<double> x(num.n);
  double scale = 1.0;
  for (Eigen::Index j = 0; j < n; ++j) scale = std::max(scale, std::abs(x0(j)));
  for (std::size_t j = 0; j < num.n; ++j) {
    x[j] = x0(static_cast<Eigen::Index>(j)) - shift * num.xi[j];
    if (x[j] < -1e-9 * scale) return std::nullopt;
    x[j] = std::max(0.0, x[j]);
  }

  // Radial parameter t: prod_j (x_j + t xi_j)^{xi_j} = |zeta|^2, increasing in t.
  double t = 0.0;
  if (std::abs(zeta) > 0.0) {
    const double target = 2.0 * std::log(std::abs(zeta));
    auto g = [&](double tt) {
      double s = 0.0;
      for (std::size_t j = 0; j < num.n; ++j)
        if (num.xi[j] > 0) s += num.xi[j] * std::log(x[j] + tt * num.xi[j]);
      return s - target;
    };
    double lo = 0.0, hi = 1.0;
    while (g(hi) < 0.0) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (g(mid) < 0.0 ? lo : hi) = mid;
    }
    t = 0.5 * (lo + hi);
  }

  ComplexVector z(num.n);
  for (std::size_t j = 0; j < num.n; ++j) z[j] = std::sqrt(x[j] + t * num.xi[j]);
  if (std::abs(zeta) > 0.0) {
    for (std::size_t j = 0; j < num.n; ++j)
      if (num.xi[j] > 0) {
        z[j] *= std::polar(1.0, std::arg(zeta) / num.xi[j]);
        break;
      }
  }
  return z;
}

ComplexVector sample_polydisc(std::mt19937_64& rng, std::size_t n, double radius, const std::vector<bool>* zero_mask) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ComplexVector z(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (zero_mask && (*zero_mask)[j]) {
      z[j] = 0.0;
      continue;
    }
    double r;
    do {
      r = radius * std::sqrt(u(rng));
    } while (r < 1e-3);
    z[j] = std::polar(r, kTwoPi * u(rng));
  }
  return z;
}

SubmersionReport submersion_impl(const Numerics& num, const SubtorusRep& rep, const ComplexVector& z) {
  if (z.size() != num.n) throw DomainError("DimensionMismatch", "z must have n coordinates");
  if (!num.poly.all_positive())
    throw DomainError("NotSurjective", "submersion check applies to the surjective part; split first");
  IndexSet support = support_of(z);
  if (is_exceptional_orbit(rep, support))
    throw DomainError("ExceptionalPoint", "z lies on an exceptional orbit");

  SubmersionReport out;
  out.witness.assign(num.n, Complex(0.0, 0.0));
  if (support.size() == num.n) {
    out.subcase = 'A';
    for (std::size_t j = 0; j < num.n; ++j) out.witness[j] = num.xi[j] / std::conj(z[j]);
  } else {
    out.subcase = 'B';
    for (std::size_t j = 0; j < num.n; ++j)
      if (z[j] == Complex(0.0, 0.0)) out.witness[j] = 1.0;
  }

  ComplexVector grad = num.poly.gradient(z);
  auto dphi = [&](const ComplexVector& v) {
    double norm2 = 0.0;
    for (std::size_t a = 0; a < num.h; ++a) {
      double s = 0.0;
      for (std::size_t j = 0; j < num.n; ++j)
        s += num.weights(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(j)) * (z[j] * std::conj(v[j])).real();
      norm2 += s * s;
    }
    return std::sqrt(norm2);
  };
  ComplexVector iw(out.witness);
  for (auto& v : iw) v *= Complex(0.0, 1.0);
  out.dphi_witness = dphi(out.witness);
  out.dphi_i_witness = dphi(iw);
  out.dp_witness = 0.0;
  for (std::size_t j = 0; j < num.n; ++j) out.dp_witness += grad[j] * out.witness[j];

  // Real Jacobian of (Phi_H, Re P, Im P) in the basis e_j, i e_j. Rows are
  // normalized before the SVD; this does not change the rank.
  const auto rows = static_cast<Eigen::Index>(num.h + 2);
  const auto cols = static_cast<Eigen::Index>(2 * num.n);
  Eigen::MatrixXd jac(rows, cols);
  for (std::size_t j = 0; j < num.n; ++j) {
    const auto re = static_cast<Eigen::Index>(2 * j), im = re + 1;
    for (std::size_t a = 0; a < num.h; ++a) {
      const double w = num.weights(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(j));
      jac(static_cast<Eigen::Index>(a), re) = w * z[j].real();
      jac(static_cast<Eigen::Index>(a), im) = w * z[j].imag();
    }
    const Complex ig = Complex(0.0, 1.0) * grad[j];
    jac(rows - 2, re) = grad[j].real();
    jac(rows - 1, re) = grad[j].imag();
    jac(rows - 2, im) = ig.real();
    jac(rows - 1, im) = ig.imag();
  }
  for (Eigen::Index r = 0; r < rows; ++r) {
    const double nr = jac.row(r).norm();
    if (nr > 0.0) jac.row(r) /= nr;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-9 * smax) ++out.real_rank;
  out.expected_rank = num.h + 2;
  out.full_rank = out.real_rank == out.expected_rank;
  return out;
}

}  // namespace

QuotientPoint trivializing_map(const LocalModel& model, const ComplexVector& z, const RationalVector& nu) {
  Numerics num = prepare(model);
  if (!model.in_h0(nu)) throw DomainError("NotInAnnihilator", "nu must lie in the annihilator h0");
  return evaluate_f(model, num, z, to_double(nu));
}

QuotientPoint trivializing_map_numeric(const LocalModel& model, const ComplexVector& z, const std::vector<double>& nu) {
  Numerics num = prepare(model);
  return evaluate_f(model, num, z, nu);
}

FiberCheckReport& FiberCheckReport::operator+=(const FiberCheckReport& o) {
  trials += o.trials;
  passes += o.passes;
  invariance_passes += o.invariance_passes;
  projected_pair_passes += o.projected_pair_passes;
  preimage_pair_passes += o.preimage_pair_passes;
  max_invariance_error = std::max(max_invariance_error, o.max_invariance_error);
  max_orbit_distance = std::max(max_orbit_distance, o.max_orbit_distance);
  return *this;
}

double orbit_distance(const LocalModel& model, const ComplexVector& z, const ComplexVector& z_prime) {
  Numerics num = prepare(model);
  if (z.size() != num.n || z_prime.size() != num.n) throw DomainError("DimensionMismatch", "z must have n coordinates");
  return orbit_distance_impl(num, z, z_prime);
}

std::optional<ComplexVector> preimage(const LocalModel& model, const std::vector<double>& a, Complex zeta) {
  Numerics num = prepare(model);
  if (a.size() != num.h) throw DomainError("DimensionMismatch", "target must lie in h*");
  return preimage_impl(num, a, zeta);
}

FiberCheckReport fiber_orbit_check(const LocalModel& model, std::uint64_t trials, std::uint64_t seed, double tol) {
  const Numerics num = prepare(model);
  grid_resolution(static_cast<std::size_t>(num.orbit_k.cols()));  // rejects h > 3 up front
  const std::vector<double> zero_nu(num.d, 0.0);
  double xi_norm2 = 0.0;
  for (double x : num.xi) xi_norm2 += x * x;

  auto shard = [&](std::uint64_t shard_seed, std::uint64_t count) {
    std::mt19937_64 rng(shard_seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    FiberCheckReport rep;
    const std::size_t hk = static_cast<std::size_t>(num.orbit_k.cols());
    for (std::uint64_t t = 0; t < count; ++t) {
      ++rep.trials;
      ComplexVector z = sample_polydisc(rng, num.n, 1.0, nullptr);
      const QuotientPoint fz = evaluate_f(model, num, z, zero_nu);

      std::vector<double> c(hk);
      for (auto& x : c) x = u(rng);
      const double inv_err = f_distance(evaluate_f(model, num, act(num, c, z), zero_nu), fz);
      rep.max_invariance_error = std::max(rep.max_invariance_error, inv_err);
      const bool invariant = inv_err < tol;

      // Random torus phases projected onto xi-perp, i.e. into ker P = H.
      std::vector<double> theta(num.n);
      for (auto& x : theta) x = kTwoPi * u(rng);
      const double dot = std::inner_product(theta.begin(), theta.end(), num.xi.begin(), 0.0);
      ComplexVector zp(z);
      for (std::size_t j = 0; j < num.n; ++j) zp[j] *= std::polar(1.0, theta[j] - dot / xi_norm2 * num.xi[j]);
      const double d1 = orbit_distance_impl(num, z, zp);
      const bool projected = f_distance(evaluate_f(model, num, zp, zero_nu), fz) < tol && d1 < tol;

      // Preimage of F(z) built from scratch.
      bool constructed = false;
      double d2 = 0.0;
      if (auto pre = preimage_impl(num, phi_h(num, z), fz.p)) {
        d2 = orbit_distance_impl(num, z, *pre);
        constructed = f_distance(evaluate_f(model, num, *pre, zero_nu), fz) < tol && d2 < tol;
      }
      rep.max_orbit_distance = std::max({rep.max_orbit_distance, d1, d2});

      rep.invariance_passes += invariant;
      rep.projected_pair_passes += projected;
      rep.preimage_pair_passes += constructed;
      rep.passes += invariant && projected && constructed;
    }
    return rep;
  };
  return detail::run_sharded<FiberCheckReport>(trials, 1000, seed, shard);
}

SurjectivityReport& SurjectivityReport::operator+=(const SurjectivityReport& o) {
  targets += o.targets;
  successes += o.successes;
  max_error = std::max(max_error, o.max_error);
  return *this;
}

SurjectivityReport surjectivity_check(const LocalModel& model, std::uint64_t targets, std::uint64_t seed, double tol) {
  const Numerics num = prepare(model);
  const IntMatrix& h0 = model.h0_basis();
  auto shard = [&](std::uint64_t shard_seed, std::uint64_t count) {
    std::mt19937_64 rng(shard_seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    SurjectivityReport rep;
    for (std::uint64_t t = 0; t < count; ++t) {
      ++rep.targets;
      ComplexVector w = sample_polydisc(rng, num.n, 1.0, nullptr);
      std::vector<double> beta = model.embed(phi_h(num, w));
      for (std::size_t i = 0; i < h0.rows(); ++i) {
        const double coeff = 2.0 * u(rng) - 1.0;
        for (std::size_t r = 0; r < num.d; ++r) beta[r] += coeff * h0(i, r).get_d();
      }
      for (std::size_t r = 0; r < num.d; ++r) beta[r] += num.alpha[r];
      const Complex zeta = std::polar(std::sqrt(u(rng)), kTwoPi * u(rng));

      // Split beta - alpha into its h* part and its h0 part.
      std::vector<double> shifted(num.d);
      for (std::size_t r = 0; r < num.d; ++r) shifted[r] = beta[r] - num.alpha[r];
      const std::vector<double> a = model.restrict_to_h(shifted);
      const std::vector<double> ea = model.embed(a);
      std::vector<double> nu(num.d);
      for (std::size_t r = 0; r < num.d; ++r) nu[r] = shifted[r] - ea[r];

      auto pre = preimage_impl(num, a, zeta);
      if (!pre) continue;
      const QuotientPoint got = evaluate_f(model, num, *pre, nu);
      const double err = f_distance(got, QuotientPoint{beta, zeta});
      rep.max_error = std::max(rep.max_error, err);
      if (err < tol) ++rep.successes;
    }
    return rep;
  };
  return detail::run_sharded<SurjectivityReport>(targets, 1000, seed, shard);
}

SubmersionReport submersion_check(const LocalModel& model, const ComplexVector& z) {
  const Numerics num = prepare(model);
  return submersion_impl(num, model.rep(), z);
}

SubmersionSampleReport& SubmersionSampleReport::operator+=(const SubmersionSampleReport& o) {
  if (o.samples == 0) return *this;
  min_dp_witness = samples == 0 ? o.min_dp_witness : std::min(min_dp_witness, o.min_dp_witness);
  samples += o.samples;
  rank_failures += o.rank_failures;
  max_witness_error = std::max(max_witness_error, o.max_witness_error);
  return *this;
}

SubmersionSampleReport submersion_sampling(const LocalModel& model, std::uint64_t samples, std::uint64_t seed) {
  const Numerics num = prepare(model);
  if (!num.poly.all_positive())
    throw DomainError("NotSurjective", "submersion check applies to the surjective part; split first");
  // Non-exceptional support patterns: full support, or a single zero at an
  // index with xi_i = 1. Encoded as the index of the zero (n = none).
  std::vector<std::size_t> patterns{num.n};
  for (std::size_t j = 0; j < num.n; ++j)
    if (num.poly.exponents[j] == 1) patterns.push_back(j);

  auto shard = [&](std::uint64_t shard_seed, std::uint64_t count) {
    std::mt19937_64 rng(shard_seed);
    std::uniform_int_distribution<std::size_t> pick(0, patterns.size() - 1);
    SubmersionSampleReport rep;
    for (std::uint64_t t = 0; t < count; ++t) {
      std::vector<bool> zero(num.n, false);
      const std::size_t p = patterns[pick(rng)];
      if (p < num.n) zero[p] = true;
      ComplexVector z = sample_polydisc(rng, num.n, 1.0, &zero);
      SubmersionReport r = submersion_impl(num, model.rep(), z);
      const double dp = std::abs(r.dp_witness);
      rep.min_dp_witness = rep.samples == 0 ? dp : std::min(rep.min_dp_witness, dp);
      ++rep.samples;
      rep.rank_failures += !r.full_rank;
      rep.max_witness_error = std::max({rep.max_witness_error, r.dphi_witness, r.dphi_i_witness});
    }
    return rep;
  };
  return detail::run_sharded<SubmersionSampleReport>(samples, 1000, seed, shard);
}

SheetMembership exceptional_sheet_member(const LocalModel& model, const ComplexVector& z) {
  DefiningPolynomial p = defining_polynomial(model.rep());
  if (z.size() != p.exponents.size()) throw DomainError("DimensionMismatch", "z must have n coordinates");
  SheetMembership m{z, false};
  for (std::size_t j = 0; j < z.size(); ++j)
    if (z[j] == Complex(0.0, 0.0) && p.exponents[j] > 0) m.on_sheet = true;
  return m;
}

}  // namespace cxone
