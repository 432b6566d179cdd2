#ifndef PARAFERM_VACUUM_HPP
#define PARAFERM_VACUUM_HPP

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "paraferm/algebra.hpp"
#include "paraferm/exactla.hpp"
#include "paraferm/rational.hpp"

namespace paraferm {

// One factor a(-depth) of a PBW monomial, depth >= 1.
struct Mode {
  int depth;
  int basis;
  auto operator<=>(const Mode&) const = default;
};

// Canonical order: depth descending, ties by basis index ascending.
// An odd factor never repeats (its square rewrites through the
// anticommutator during straightening).
struct Monomial {
  std::vector<Mode> factors;

  int weight() const;
  RootVec charge(const LieSuperalgebra& a) const;
  int parity(const LieSuperalgebra& a) const;
  bool empty() const { return factors.empty(); }
  std::string key(const LieSuperalgebra& a) const;   // "b17(-3)*b2(-1)^2"
  auto operator<=>(const Monomial&) const = default;
};

// Sparse rational combination of monomials.  The truncation flag is sticky:
// once any contribution above the working cutoff has been discarded, every
// state derived from this one carries the flag.
struct State {
  std::map<Monomial, Rat> terms;
  bool truncated = false;

  bool is_zero() const { return terms.empty(); }
  State& add_term(const Monomial& m, const Rat& c);
  State& axpy(const Rat& c, const State& o);
  State scaled(const Rat& c) const;
  int max_weight() const;   // -1 for the zero state
  // Weight/charge of a homogeneous state; throws on mixed grading.
  int weight() const;
  RootVec charge(const LieSuperalgebra& a) const;
  std::string json(const LieSuperalgebra& a) const;
};

class VacuumSpace {
 public:
  VacuumSpace(AlgebraPtr algebra, int level, int working_cutoff);

  const LieSuperalgebra& algebra() const { return *algebra_; }
  AlgebraPtr algebra_ptr() const { return algebra_; }
  int level() const { return level_; }
  int working_cutoff() const { return cutoff_; }

  static State vacuum_state();

  // All canonical monomials of the given weight and charge, in a fixed
  // deterministic order.  Throws cutoff-exceeded past the working cutoff.
  const std::vector<Monomial>& basis(int w, const RootVec& charge) const;
  std::vector<RootVec> charges_at(int w) const;
  int block_dim(int w, const RootVec& charge) const;
  int monomial_index(int w, const RootVec& charge, const Monomial& m) const;

  // Raw mode actions.  a(n) with n >= 0 never raises weight; raising past
  // the working cutoff discards the term and sets the truncation flag.
  State apply_raw(int basis_index, int n, const State& v) const;
  State apply_mode(const AlgebraElement& a, int n, const State& v) const;

  // Canonical form of a raw sequence a_1(n_1)...a_t(n_t)|0>.
  State straighten(const std::vector<std::pair<int, int>>& modes) const;

  // u_m v by recursive expansion on the leading factor of u.
  State composite_mode(const State& u, long m, const State& v) const;

  State sugawara() const;               // omega_aff
  State heisenberg_virasoro() const;    // omega_h
  State coset_virasoro() const;         // omega_aff - omega_h
  State singular_vector() const;        // e_theta(-1)^{k+1}|0>

  // Gram matrix of the contravariant pairing on a (weight, charge) block.
  exactla::SparseMatrix contravariant_gram(int w, const RootVec& charge) const;
  Rat pair(const Monomial& u, const State& v) const;

  // Coordinates of a homogeneous state in the block basis.
  exactla::SparseRow to_row(const State& v, int w, const RootVec& charge) const;
  State from_row(const exactla::SparseRow& r, int w, const RootVec& charge) const;

 private:
  State apply_raw_mono(int b, int n, const Monomial& m) const;
  State composite_mono(const Monomial& u, long m, const State& v) const;
  void ensure_weight(int w) const;

  AlgebraPtr algebra_;
  int level_;
  int cutoff_;

  struct Block {
    std::vector<Monomial> monos;
    std::map<Monomial, int> index;
  };
  mutable std::mutex cache_mu_;
  mutable std::map<int, std::map<RootVec, Block>> blocks_;   // by weight
};

struct CutoffExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace paraferm

#endif
