#include "paraferm/vacuum.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace paraferm {

int Monomial::weight() const {
  int w = 0;
  for (const auto& f : factors) w += f.depth;
  return w;
}

RootVec Monomial::charge(const LieSuperalgebra& a) const {
  RootVec c(a.rank(), 0);
  for (const auto& f : factors) c = root_add(c, a.root_of(f.basis));
  return c;
}

int Monomial::parity(const LieSuperalgebra& a) const {
  int p = 0;
  for (const auto& f : factors) p ^= a.odd(f.basis) ? 1 : 0;
  return p;
}

std::string Monomial::key(const LieSuperalgebra& a) const {
  if (factors.empty()) return "1";
  std::ostringstream os;
  for (size_t i = 0; i < factors.size();) {
    size_t j = i;
    while (j < factors.size() && factors[j] == factors[i]) ++j;
    if (i) os << "\xC2\xB7";
    os << "b" << factors[i].basis << "(-" << factors[i].depth << ")";
    if (j - i > 1) os << "^" << (j - i);
    i = j;
  }
  return os.str();
}

State& State::add_term(const Monomial& m, const Rat& c) {
  auto it = terms.find(m);
  if (it == terms.end()) {
    if (!paraferm::is_zero(c)) terms.emplace(m, c);
  } else {
    it->second += c;
    if (paraferm::is_zero(it->second)) terms.erase(it);
  }
  return *this;
}

State& State::axpy(const Rat& c, const State& o) {
  truncated |= o.truncated;
  if (paraferm::is_zero(c)) return *this;
  for (const auto& [m, v] : o.terms) add_term(m, c * v);
  return *this;
}

State State::scaled(const Rat& c) const {
  State out;
  out.truncated = truncated;
  if (paraferm::is_zero(c)) return out;
  for (const auto& [m, v] : terms) out.terms.emplace(m, c * v);
  return out;
}

int State::max_weight() const {
  int w = -1;
  for (const auto& [m, v] : terms) w = std::max(w, m.weight());
  return w;
}

int State::weight() const {
  int w = -1;
  for (const auto& [m, v] : terms) {
    int mw = m.weight();
    if (w == -1) w = mw;
    else if (w != mw) throw std::runtime_error("state is not weight-homogeneous");
  }
  return w < 0 ? 0 : w;
}

RootVec State::charge(const LieSuperalgebra& a) const {
  RootVec c(a.rank(), 0);
  bool first = true;
  for (const auto& [m, v] : terms) {
    RootVec mc = m.charge(a);
    if (first) { c = mc; first = false; }
    else if (c != mc) throw std::runtime_error("state is not charge-homogeneous");
  }
  return c;
}

std::string State::json(const LieSuperalgebra& a) const {
  std::ostringstream os;
  os << "[";
  bool first = true;
  for (const auto& [m, v] : terms) {
    if (!first) os << ",";
    first = false;
    os << "[\"" << m.key(a) << "\"," << v.get_num().get_str() << ","
       << v.get_den().get_str() << "]";
  }
  os << "]";
  return os.str();
}

VacuumSpace::VacuumSpace(AlgebraPtr algebra, int level, int working_cutoff)
    : algebra_(std::move(algebra)), level_(level), cutoff_(working_cutoff) {
  if (level_ < 1) throw std::invalid_argument("level must be a positive integer");
  if (cutoff_ < 1) throw std::invalid_argument("working cutoff must be >= 1");
}

State VacuumSpace::vacuum_state() {
  State s;
  s.terms.emplace(Monomial{}, Rat(1));
  return s;
}

void VacuumSpace::ensure_weight(int w) const {
  if (w < 0) throw std::invalid_argument("negative weight");
  if (w > cutoff_) throw CutoffExceeded("weight " + std::to_string(w) + " exceeds working cutoff");
  std::lock_guard<std::mutex> lk(cache_mu_);
  if (blocks_.count(w)) return;
  auto& by_charge = blocks_[w];
  const auto& A = *algebra_;
  std::vector<Mode> cur;
  auto record = [&]() {
    Monomial m{cur};
    by_charge[m.charge(A)].monos.push_back(std::move(m));
  };
  // Factors in canonical order: depth descending, basis ascending on ties.
  auto gen = [&](auto&& self, int remaining, int last_depth, int last_basis) -> void {
    if (remaining == 0) { record(); return; }
    for (int d = std::min(last_depth, remaining); d >= 1; --d) {
      for (int b = 0; b < A.dim(); ++b) {
        if (d == last_depth) {
          if (b < last_basis) continue;
          if (b == last_basis && A.odd(b)) continue;   // no repeated odd mode
        }
        cur.push_back(Mode{d, b});
        self(self, remaining - d, d, b);
        cur.pop_back();
      }
    }
  };
  gen(gen, w, w, -1);
  for (auto& [c, blk] : by_charge)
    for (int i = 0; i < static_cast<int>(blk.monos.size()); ++i) blk.index[blk.monos[i]] = i;
}

const std::vector<Monomial>& VacuumSpace::basis(int w, const RootVec& charge) const {
  ensure_weight(w);
  std::lock_guard<std::mutex> lk(cache_mu_);
  static const std::vector<Monomial> kEmpty;
  auto& by_charge = blocks_.at(w);
  auto it = by_charge.find(charge);
  return it == by_charge.end() ? kEmpty : it->second.monos;
}

std::vector<RootVec> VacuumSpace::charges_at(int w) const {
  ensure_weight(w);
  std::lock_guard<std::mutex> lk(cache_mu_);
  std::vector<RootVec> out;
  for (const auto& [c, blk] : blocks_.at(w)) out.push_back(c);
  return out;
}

int VacuumSpace::block_dim(int w, const RootVec& charge) const {
  return static_cast<int>(basis(w, charge).size());
}

int VacuumSpace::monomial_index(int w, const RootVec& charge, const Monomial& m) const {
  ensure_weight(w);
  std::lock_guard<std::mutex> lk(cache_mu_);
  auto& by_charge = blocks_.at(w);
  auto it = by_charge.find(charge);
  if (it == by_charge.end()) throw std::invalid_argument("empty block");
  auto jt = it->second.index.find(m);
  if (jt == it->second.index.end()) throw std::invalid_argument("monomial not in block");
  return jt->second;
}

State VacuumSpace::apply_raw_mono(int b, int n, const Monomial& mono) const {
  const auto& A = *algebra_;
  State out;
  if (n <= -1) {
    const int d = -n;
    bool canonical = mono.empty();
    if (!canonical) {
      const Mode& head = mono.factors.front();
      if (d > head.depth) canonical = true;
      else if (d == head.depth && b < head.basis) canonical = true;
      else if (d == head.depth && b == head.basis && !A.odd(b)) canonical = true;
      else if (d == head.depth && b == head.basis && A.odd(b)) {
        // Odd square: x(n)x(n) = ({x,x}(2n) + n<x,x>delta_{2n,0}k)/2; the
        // central term never fires for n <= -1.
        Monomial rest{std::vector<Mode>(mono.factors.begin() + 1, mono.factors.end())};
        State rest_state;
        rest_state.terms.emplace(rest, Rat(1));
        return apply_mode(A.bracket_basis(b, b), 2 * n, rest_state).scaled(rat(1, 2));
      }
    }
    if (canonical) {
      if (mono.weight() + d > cutoff_) {
        out.truncated = true;
        return out;
      }
      Monomial m2;
      m2.factors.reserve(mono.factors.size() + 1);
      m2.factors.push_back(Mode{d, b});
      m2.factors.insert(m2.factors.end(), mono.factors.begin(), mono.factors.end());
      out.terms.emplace(std::move(m2), Rat(1));
      return out;
    }
  }
  if (mono.empty()) return out;   // a(n)|0> = 0 for n >= 0
  const Mode head = mono.factors.front();
  Monomial rest{std::vector<Mode>(mono.factors.begin() + 1, mono.factors.end())};
  const bool both_odd = A.odd(b) && A.odd(head.basis);
  // a(n) c(-m) = +-c(-m) a(n) + [a,c](n-m) + n<a,c> delta_{n,m} k.
  State pushed = apply_raw_mono(b, n, rest);
  out = apply_raw(head.basis, -head.depth, pushed).scaled(both_odd ? Rat(-1) : Rat(1));
  State rest_state;
  rest_state.terms.emplace(rest, Rat(1));
  out.axpy(Rat(1), apply_mode(A.bracket_basis(b, head.basis), n - head.depth, rest_state));
  if (n == head.depth) {
    Rat central = Rat(n) * A.form_basis(b, head.basis) * Rat(level_);
    out.axpy(central, rest_state);
  }
  return out;
}

State VacuumSpace::apply_raw(int basis_index, int n, const State& v) const {
  State out;
  out.truncated = v.truncated;
  for (const auto& [m, c] : v.terms) out.axpy(c, apply_raw_mono(basis_index, n, m));
  return out;
}

State VacuumSpace::apply_mode(const AlgebraElement& a, int n, const State& v) const {
  if (a.owner && a.owner != algebra_->id())
    throw std::invalid_argument("element belongs to a different algebra");
  State out;
  out.truncated = v.truncated;
  for (const auto& [b, c] : a.coeff) out.axpy(c, apply_raw(b, n, v));
  return out;
}

State VacuumSpace::straighten(const std::vector<std::pair<int, int>>& modes) const {
  State v = vacuum_state();
  for (auto it = modes.rbegin(); it != modes.rend(); ++it) v = apply_raw(it->first, it->second, v);
  return v;
}

State VacuumSpace::composite_mono(const Monomial& u, long m, const State& v) const {
  if (v.is_zero()) {
    State z;
    z.truncated = v.truncated;
    return z;
  }
  if (u.empty()) {
    if (m == -1) return v;
    State z;
    z.truncated = v.truncated;
    return z;
  }
  const int wtv = v.max_weight();
  const int wtu = u.weight();
  if (wtu + wtv - m - 1 < 0) {
    State z;
    z.truncated = v.truncated;
    return z;
  }
  const auto& A = *algebra_;
  const Mode head = u.factors.front();
  const int s = head.depth;
  Monomial rest{std::vector<Mode>(u.factors.begin() + 1, u.factors.end())};
  const bool sigma_neg = A.odd(head.basis) && (rest.parity(A) == 1);
  const Rat sign2 = (s % 2 == 0 ? Rat(-1) : Rat(1)) * (sigma_neg ? Rat(-1) : Rat(1));

  State out;
  out.truncated = v.truncated;
  const long imax1 = wtv + rest.weight() - m - 1;
  for (long i = 0; i <= imax1; ++i) {
    State t = composite_mono(rest, m + i, v);
    if (t.is_zero() && !t.truncated) continue;
    out.axpy(binomial(s + i - 1, i), apply_raw(head.basis, static_cast<int>(-s - i), t));
  }
  for (long i = 0; i <= wtv; ++i) {
    State t = apply_raw(head.basis, static_cast<int>(i), v);
    if (t.is_zero() && !t.truncated) continue;
    out.axpy(sign2 * binomial(s + i - 1, i), composite_mono(rest, m - s - i, t));
  }
  return out;
}

State VacuumSpace::composite_mode(const State& u, long m, const State& v) const {
  State out;
  out.truncated = u.truncated || v.truncated;
  for (const auto& [mono, c] : u.terms) out.axpy(c, composite_mono(mono, m, v));
  return out;
}

State VacuumSpace::sugawara() const {
  if (cutoff_ < 2) throw CutoffExceeded("sugawara needs working cutoff >= 2");
  const auto& A = *algebra_;
  State acc;
  const auto& cartan = A.cartan();
  for (size_t i = 0; i < cartan.size(); ++i)
    for (size_t j = 0; j < cartan.size(); ++j) {
      const Rat& c = A.cartan_gram_inv(static_cast<int>(i), static_cast<int>(j));
      if (!is_zero(c)) acc.axpy(c, straighten({{cartan[i], -1}, {cartan[j], -1}}));
    }
  for (const auto& r : A.root_datum().roots) {
    if (r.cls == RootClass::Odd) continue;
    int neg = A.root_datum().space_of.at(root_neg(r.coords));
    acc.axpy(root_pairing(r.coords, r.coords) / 2,
             straighten({{r.basis_index, -1}, {neg, -1}}));
  }
  for (const auto& r : A.root_datum().roots) {
    if (r.cls != RootClass::Odd || !r.positive) continue;
    int neg = A.root_datum().space_of.at(root_neg(r.coords));
    acc.axpy(rat(-1, 2), straighten({{r.basis_index, -1}, {neg, -1}}));
    acc.axpy(rat(1, 2), straighten({{neg, -1}, {r.basis_index, -1}}));
  }
  return acc.scaled(1 / (2 * (Rat(level_) + A.dual_coxeter())));
}

State VacuumSpace::heisenberg_virasoro() const {
  if (cutoff_ < 2) throw CutoffExceeded("heisenberg virasoro needs working cutoff >= 2");
  const auto& A = *algebra_;
  State acc;
  const auto& cartan = A.cartan();
  for (size_t i = 0; i < cartan.size(); ++i)
    for (size_t j = 0; j < cartan.size(); ++j) {
      const Rat& c = A.cartan_gram_inv(static_cast<int>(i), static_cast<int>(j));
      if (!is_zero(c)) acc.axpy(c, straighten({{cartan[i], -1}, {cartan[j], -1}}));
    }
  return acc.scaled(rat(1, 2 * level_));
}

State VacuumSpace::coset_virasoro() const {
  State w = sugawara();
  w.axpy(Rat(-1), heisenberg_virasoro());
  return w;
}

State VacuumSpace::singular_vector() const {
  if (level_ + 1 > cutoff_)
    throw CutoffExceeded("singular vector weight k+1 exceeds working cutoff");
  int theta = algebra_->root_datum().highest_root_index;
  Monomial m;
  m.factors.assign(level_ + 1, Mode{1, theta});
  State s;
  s.terms.emplace(std::move(m), Rat(1));
  return s;
}

Rat VacuumSpace::pair(const Monomial& u, const State& v) const {
  if (v.is_zero()) return 0;
  if (u.empty()) {
    auto it = v.terms.find(Monomial{});
    return it == v.terms.end() ? Rat(0) : it->second;
  }
  const Mode head = u.factors.front();
  auto [img, sc] = algebra_->eta_basis(head.basis);
  Monomial rest{std::vector<Mode>(u.factors.begin() + 1, u.factors.end())};
  return sc * pair(rest, apply_raw(img, head.depth, v));
}

exactla::SparseMatrix VacuumSpace::contravariant_gram(int w, const RootVec& charge) const {
  const auto& monos = basis(w, charge);
  exactla::SparseMatrix g(static_cast<int>(monos.size()));
  for (const auto& mi : monos) {
    exactla::SparseRow row;
    for (int j = 0; j < static_cast<int>(monos.size()); ++j) {
      State vj;
      vj.terms.emplace(monos[j], Rat(1));
      Rat val = pair(mi, vj);
      if (!is_zero(val)) row.emplace_back(j, val);
    }
    g.add_row(std::move(row));
  }
  return g;
}

exactla::SparseRow VacuumSpace::to_row(const State& v, int w, const RootVec& charge) const {
  exactla::SparseRow row;
  for (const auto& [m, c] : v.terms) row.emplace_back(monomial_index(w, charge, m), c);
  std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return row;
}

State VacuumSpace::from_row(const exactla::SparseRow& r, int w, const RootVec& charge) const {
  const auto& monos = basis(w, charge);
  State out;
  for (const auto& [j, c] : r) out.terms.emplace(monos[j], c);
  return out;
}

}  // namespace paraferm
