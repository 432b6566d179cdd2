#ifndef PARAFERM_ALGEBRA_HPP
#define PARAFERM_ALGEBRA_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "paraferm/rational.hpp"

namespace paraferm {

// Root coordinates in the epsilon basis, integer entries.
// <alpha,beta> = (sum_i a_i b_i) / 2, so long roots 2e_i have norm 2,
// short roots e_i-e_j norm 1, odd roots e_i norm 1/2.
using RootVec = std::vector<int>;

Rat root_pairing(const RootVec& a, const RootVec& b);
RootVec root_add(const RootVec& a, const RootVec& b);
RootVec root_neg(const RootVec& a);
bool root_is_zero(const RootVec& a);
std::string root_str(const RootVec& a);

enum class RootClass { EvenLong, EvenShort, Odd };

struct Root {
  RootVec coords;
  RootClass cls;
  bool positive;
  int basis_index;   // index of the root vector in the algebra basis
};

struct RootDatum {
  std::vector<Root> roots;
  RootVec highest_root;
  int highest_root_index = -1;           // basis index of e_theta
  std::map<RootVec, int> space_of;       // root -> basis index

  std::vector<Root> positive_even() const;
  int count(RootClass c) const;
};

// Sparse element: basis index -> coefficient, no zeros stored.
struct AlgebraElement {
  unsigned long owner = 0;               // id of the owning algebra, 0 = free
  std::map<int, Rat> coeff;

  bool is_zero() const { return coeff.empty(); }
  AlgebraElement& add(int idx, const Rat& c);
  AlgebraElement& axpy(const Rat& c, const AlgebraElement& o);
  AlgebraElement scaled(const Rat& c) const;
};

struct ChevalleyData {
  RootVec root;
  int e_plus = -1, e_minus = -1;         // basis indices
  AlgebraElement coroot;                 // h_alpha as a Cartan combination
  bool has_odd_pair = false;
  int x_plus = -1, x_minus = -1;         // odd pair for long roots
};

struct ValidationCheck {
  std::string name;
  bool pass;
  std::string witness;   // empty when passing
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool all_pass() const;
  std::string summary() const;
};

class LieSuperalgebra {
 public:
  static std::shared_ptr<LieSuperalgebra> build_osp(int n);
  static std::shared_ptr<LieSuperalgebra> build_sl2();

  const std::string& name() const { return name_; }
  unsigned long id() const { return id_; }
  int dim() const { return static_cast<int>(basis_labels_.size()); }
  int rank() const { return rank_; }
  const Rat& dual_coxeter() const { return dual_coxeter_; }
  Rat super_dim() const;   // dim even - dim odd

  const std::string& label(int i) const { return basis_labels_[i]; }
  bool odd(int i) const { return parity_[i]; }
  const RootVec& root_of(int i) const { return root_of_[i]; }
  const std::vector<int>& cartan() const { return cartan_; }
  // Gram matrix of the stored Cartan basis is 2*I; sums over an
  // orthonormal basis are realized through this inverse.
  const Rat& cartan_gram_inv(int i, int j) const { return cartan_gram_inv_[i][j]; }

  // Structure constants: [basis a, basis b] (anticommutator when both odd).
  const AlgebraElement& bracket_basis(int a, int b) const { return bracket_[a][b]; }
  const Rat& form_basis(int a, int b) const { return form_[a][b]; }
  // Cartan anti-involution on the basis: eta(b) = scalar * basis[index].
  std::pair<int, Rat> eta_basis(int b) const { return eta_[b]; }

  AlgebraElement element(int basis_index, const Rat& c = Rat(1)) const;
  AlgebraElement cartan_element(const RootVec& t_alpha_times2) const;  // sum c_i d_i
  AlgebraElement bracket(const AlgebraElement& a, const AlgebraElement& b) const;
  Rat form(const AlgebraElement& a, const AlgebraElement& b) const;
  int parity(const AlgebraElement& a) const;   // 0/1, throws if mixed

  const RootDatum& root_datum() const { return roots_; }
  RootDatum classify_roots() const;            // recomputed from the Cartan action
  const ChevalleyData& root_generators(const RootVec& positive_even_root) const;
  const std::vector<ChevalleyData>& chevalley() const { return chevalley_; }

  // h_alpha: t_alpha for long roots, 2 t_alpha for short.
  AlgebraElement coroot(const RootVec& alpha) const;
  // t_alpha, the image of alpha in the Cartan under the form.
  AlgebraElement t_vector(const RootVec& alpha) const;
  // Simple roots in the fixed order (e_i - e_{i+1}, ..., e_n).
  const std::vector<RootVec>& simple_roots() const { return simple_roots_; }

  ValidationReport validate() const;

  std::string dump_json() const;

  // Test hook: injects a fault into the structure-constant table.
  void debug_perturb_bracket(int a, int b, int target, const Rat& delta);

 private:
  LieSuperalgebra() = default;
  void finalize();   // root datum, chevalley, eta, caches

  std::string name_;
  unsigned long id_ = 0;
  int rank_ = 0;
  Rat dual_coxeter_;
  std::vector<std::string> basis_labels_;
  std::vector<bool> parity_;
  std::vector<RootVec> root_of_;
  std::vector<int> cartan_;
  std::vector<std::vector<AlgebraElement>> bracket_;
  std::vector<std::vector<Rat>> form_;
  std::vector<std::vector<Rat>> cartan_gram_inv_;
  std::vector<std::pair<int, Rat>> eta_;
  std::vector<RootVec> simple_roots_;
  RootDatum roots_;
  std::vector<ChevalleyData> chevalley_;
};

using AlgebraPtr = std::shared_ptr<LieSuperalgebra>;

}  // namespace paraferm

#endif
