#pragma once

// Compact abelian subgroups H of (S^1)^n acting linearly on C^n.
//
// Two presentations are accepted:
//   image  - a weight matrix W (h x n); H is the image of (S^1)^h under
//            t -> (t^{eta_1}, ..., t^{eta_n}), eta_j the columns of W.
//   kernel - a relation matrix Q ((n-h) x n, full row rank);
//            H = { lambda : prod_j lambda_j^{Q_rj} = 1 for every row r }.
// The image presentation always describes a connected subtorus; the kernel
// presentation may describe a disconnected group.

#include <complex>
#include <cstddef>
#include <vector>

#include "cxone/cone.hpp"
#include "cxone/lattice.hpp"

namespace cxone {

enum class Presentation { Image, Kernel };

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;
using IndexSet = std::vector<std::size_t>;  // sorted, 0-based

class SubtorusRep {
 public:
  SubtorusRep() = default;
  static SubtorusRep from_image(IntMatrix weights);
  /// Throws DomainError("InvalidPresentation") if `relations` is rank deficient.
  static SubtorusRep from_kernel(IntMatrix relations);

  std::size_t n() const noexcept { return n_; }
  std::size_t h() const noexcept { return h_; }
  Presentation presentation() const noexcept { return presentation_; }
  /// The matrix exactly as supplied.
  const IntMatrix& matrix() const noexcept { return matrix_; }

  /// h x n; column j is eta_j in a lattice basis of the weight lattice of the
  /// identity component.
  const IntMatrix& weights() const noexcept { return weights_; }
  /// Rows generate the characters of (S^1)^n that vanish on H.
  const IntMatrix& relations() const noexcept { return relations_; }

  /// Faithfulness of the action on C^n. Kernel presentations are subgroups
  /// and hence always effective; image presentations are effective iff the
  /// weights generate Z^h.
  bool effective() const noexcept { return effective_; }
  bool connected() const noexcept { return component_orders().empty(); }
  /// Orders (> 1) of the cyclic factors of the component group H / H_0.
  IntVector component_orders() const;

 private:
  std::size_t n_ = 0;
  std::size_t h_ = 0;
  Presentation presentation_ = Presentation::Image;
  IntMatrix matrix_;
  IntMatrix weights_;
  IntMatrix relations_;
  bool effective_ = false;
};

/// P(z) = prod_j z_j^{xi_j}.
struct DefiningPolynomial {
  IntVector exponents;

  bool all_positive() const;
  /// Evaluated through log-magnitude and accumulated phase so that large
  /// exponents do not overflow intermediate powers.
  Complex evaluate(const ComplexVector& z) const;
  /// Holomorphic partial derivatives dP/dz_j at z.
  ComplexVector gradient(const ComplexVector& z) const;
};

struct StabilizerInfo {
  std::size_t dimension = 0;
  IntVector component_group;  // cyclic orders, all > 1
  bool is_trivial() const { return dimension == 0 && component_group.empty(); }
};

struct Splitting {
  /// New coordinate k is old coordinate permutation[k].
  std::vector<std::size_t> permutation;
  SubtorusRep onto_part;   // H' on C^{h'+1}, surjective moment map
  SubtorusRep toric_part;  // H'' = (S^1)^{h''} acting on C^{h''} by the identity
  DefiningPolynomial onto_polynomial;
  std::size_t h_prime = 0;
  std::size_t h_double_prime = 0;
};

/// (1/2) sum_j |z_j|^2 eta_j in h* coordinates.
std::vector<double> moment_eval(const SubtorusRep& rep, const ComplexVector& z);

bool is_onto(const SubtorusRep& rep);
bool is_proper(const SubtorusRep& rep);

/// Errors: Ineffective, NotComplexityOne, NotNonProper, ExactnessFailure.
DefiningPolynomial defining_polynomial(const SubtorusRep& rep);

Splitting split(const SubtorusRep& rep);

/// Reassembles H' x H'' in the original coordinate order and compares the
/// relation lattice with that of `rep`.
bool splitting_reassembles(const SubtorusRep& rep, const Splitting& s);

/// {lambda in H : lambda_j = 1 for all j in support}.
StabilizerInfo stabilizer(const SubtorusRep& rep, const IndexSet& support);

/// Combinatorial criterion for surjective complexity-one representations:
/// the orbit is non-exceptional iff the support is full, or misses exactly
/// one index i with xi_i = 1. Errors: NotSurjective.
bool is_exceptional_orbit(const SubtorusRep& rep, const IndexSet& support);

IndexSet full_support(std::size_t n);
IndexSet support_of(const ComplexVector& z);

}  // namespace cxone
