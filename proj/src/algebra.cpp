#include "paraferm/algebra.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace paraferm {

namespace {

std::atomic<unsigned long> next_algebra_id{1};

// Dense supermatrix working representation, used only during construction.
using Mat = std::vector<std::vector<Rat>>;

Mat zero_mat(int n) { return Mat(n, std::vector<Rat>(n, Rat(0))); }

Mat unit(int n, int r, int c) {
  Mat m = zero_mat(n);
  m[r][c] = 1;
  return m;
}

Mat add(const Mat& a, const Mat& b, const Rat& cb = Rat(1)) {
  Mat m = a;
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m.size(); ++j) m[i][j] += cb * b[i][j];
  return m;
}

Mat scale_mat(const Mat& a, const Rat& c) {
  Mat m = a;
  for (auto& row : m)
    for (auto& v : row) v *= c;
  return m;
}

Mat mul(const Mat& a, const Mat& b) {
  const int n = static_cast<int>(a.size());
  Mat m = zero_mat(n);
  for (int i = 0; i < n; ++i)
    for (int kk = 0; kk < n; ++kk) {
      if (is_zero(a[i][kk])) continue;
      for (int j = 0; j < n; ++j) m[i][j] += a[i][kk] * b[kk][j];
    }
  return m;
}

// Super-commutator: anticommutator when both arguments are odd.
Mat super_bracket(const Mat& a, bool pa, const Mat& b, bool pb) {
  Mat ab = mul(a, b);
  Mat ba = mul(b, a);
  return add(ab, ba, (pa && pb) ? Rat(1) : Rat(-1));
}

bool mat_zero(const Mat& m) {
  for (const auto& row : m)
    for (const auto& v : row)
      if (!is_zero(v)) return false;
  return true;
}

struct RawElem {
  std::string label;
  bool odd;
  RootVec root;
  Mat m;
};

}  // namespace

Rat root_pairing(const RootVec& a, const RootVec& b) {
  long dot = 0;
  for (size_t i = 0; i < a.size(); ++i) dot += static_cast<long>(a[i]) * b[i];
  return rat(dot, 2);
}

RootVec root_add(const RootVec& a, const RootVec& b) {
  RootVec r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

RootVec root_neg(const RootVec& a) {
  RootVec r = a;
  for (auto& v : r) v = -v;
  return r;
}

bool root_is_zero(const RootVec& a) {
  for (int v : a)
    if (v != 0) return false;
  return true;
}

std::string root_str(const RootVec& a) {
  std::string s = "(";
  for (size_t i = 0; i < a.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(a[i]);
  }
  return s + ")";
}

std::vector<Root> RootDatum::positive_even() const {
  std::vector<Root> out;
  for (const auto& r : roots)
    if (r.positive && r.cls != RootClass::Odd) out.push_back(r);
  return out;
}

int RootDatum::count(RootClass c) const {
  int k = 0;
  for (const auto& r : roots)
    if (r.cls == c) ++k;
  return k;
}

AlgebraElement& AlgebraElement::add(int idx, const Rat& c) {
  auto it = coeff.find(idx);
  if (it == coeff.end()) {
    if (!paraferm::is_zero(c)) coeff.emplace(idx, c);
  } else {
    it->second += c;
    if (paraferm::is_zero(it->second)) coeff.erase(it);
  }
  return *this;
}

AlgebraElement& AlgebraElement::axpy(const Rat& c, const AlgebraElement& o) {
  for (const auto& [i, v] : o.coeff) add(i, c * v);
  return *this;
}

AlgebraElement AlgebraElement::scaled(const Rat& c) const {
  AlgebraElement r;
  r.owner = owner;
  if (paraferm::is_zero(c)) return r;
  for (const auto& [i, v] : coeff) r.coeff.emplace(i, c * v);
  return r;
}

bool ValidationReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.pass ? "pass  " : "FAIL  ") << c.name;
    if (!c.pass && !c.witness.empty()) os << "  [" << c.witness << "]";
    os << "\n";
  }
  return os.str();
}

AlgebraElement LieSuperalgebra::element(int basis_index, const Rat& c) const {
  if (basis_index < 0 || basis_index >= dim())
    throw std::invalid_argument("basis index out of range");
  AlgebraElement e;
  e.owner = id_;
  if (!is_zero(c)) e.coeff.emplace(basis_index, c);
  return e;
}

AlgebraElement LieSuperalgebra::bracket(const AlgebraElement& a, const AlgebraElement& b) const {
  if ((a.owner && a.owner != id_) || (b.owner && b.owner != id_))
    throw std::invalid_argument("element belongs to a different algebra");
  AlgebraElement out;
  out.owner = id_;
  for (const auto& [i, ca] : a.coeff) {
    if (i >= dim()) throw std::invalid_argument("basis index out of range");
    for (const auto& [j, cb] : b.coeff) {
      if (j >= dim()) throw std::invalid_argument("basis index out of range");
      out.axpy(ca * cb, bracket_[i][j]);
    }
  }
  return out;
}

Rat LieSuperalgebra::form(const AlgebraElement& a, const AlgebraElement& b) const {
  if ((a.owner && a.owner != id_) || (b.owner && b.owner != id_))
    throw std::invalid_argument("element belongs to a different algebra");
  Rat out(0);
  for (const auto& [i, ca] : a.coeff)
    for (const auto& [j, cb] : b.coeff) out += ca * cb * form_[i][j];
  return out;
}

int LieSuperalgebra::parity(const AlgebraElement& a) const {
  int p = -1;
  for (const auto& [i, c] : a.coeff) {
    int pi = parity_[i] ? 1 : 0;
    if (p == -1) p = pi;
    else if (p != pi) throw std::invalid_argument("element is not parity-homogeneous");
  }
  return p == -1 ? 0 : p;
}

Rat LieSuperalgebra::super_dim() const {
  long even = 0, odd = 0;
  for (bool p : parity_) (p ? odd : even)++;
  return Rat(even - odd);
}

AlgebraElement LieSuperalgebra::t_vector(const RootVec& alpha) const {
  // <t_alpha, d_j> = alpha(d_j) = alpha_j and <d_i,d_j> = 2 delta_ij.
  AlgebraElement e;
  e.owner = id_;
  for (size_t j = 0; j < cartan_.size(); ++j) e.add(cartan_[j], rat(alpha[j], 2));
  return e;
}

AlgebraElement LieSuperalgebra::coroot(const RootVec& alpha) const {
  Rat norm = root_pairing(alpha, alpha);
  return t_vector(alpha).scaled(2 / norm);   // h_alpha = 2 t_alpha / <a,a>
}

RootDatum LieSuperalgebra::classify_roots() const {
  RootDatum rd;
  for (int b = 0; b < dim(); ++b) {
    bool is_cartan = false;
    for (int c : cartan_) is_cartan |= (c == b);
    if (is_cartan) continue;
    // Simultaneous Cartan eigenvalues of ad(d_j).
    RootVec alpha(rank_, 0);
    for (int j = 0; j < rank_; ++j) {
      const AlgebraElement& br = bracket_[cartan_[j]][b];
      if (br.is_zero()) continue;
      if (br.coeff.size() != 1 || br.coeff.begin()->first != b ||
          br.coeff.begin()->second.get_den() != 1)
        throw std::runtime_error("non-semisimple Cartan action on basis element " + label(b));
      alpha[j] = static_cast<int>(br.coeff.begin()->second.get_num().get_si());
    }
    Rat norm = root_pairing(alpha, alpha);
    RootClass cls;
    if (norm == 2) cls = RootClass::EvenLong;
    else if (norm == 1) cls = RootClass::EvenShort;
    else if (norm == rat(1, 2)) cls = RootClass::Odd;
    else throw std::runtime_error("unexpected root length for " + label(b) + ": alpha=" +
                                  root_str(alpha) + " norm=" + rat_str(norm));
    bool pos = false;
    for (int v : alpha) {
      if (v != 0) { pos = v > 0; break; }
    }
    rd.roots.push_back(Root{alpha, cls, pos, b});
    rd.space_of[alpha] = b;
  }
  // Highest root: lexicographically maximal positive root.
  RootVec best;
  for (const auto& r : rd.roots)
    if (r.positive && (best.empty() || r.coords > best)) {
      best = r.coords;
      rd.highest_root_index = r.basis_index;
    }
  rd.highest_root = best;
  return rd;
}

const ChevalleyData& LieSuperalgebra::root_generators(const RootVec& alpha) const {
  for (const auto& cd : chevalley_)
    if (cd.root == alpha) return cd;
  throw std::invalid_argument("not an even positive root: " + root_str(alpha));
}

void LieSuperalgebra::debug_perturb_bracket(int a, int b, int target, const Rat& delta) {
  bracket_[a][b].add(target, delta);
}

namespace {

// Builds the final algebra object from a fully normalized raw basis.
struct Builder {
  std::vector<RawElem> elems;
  std::vector<int> str_sign;   // supertrace signs per matrix index

  Rat str(const Mat& m) const {
    Rat s(0);
    for (size_t i = 0; i < m.size(); ++i) s += Rat(str_sign[i]) * m[i][i];
    return s;
  }

  // Express a matrix in the basis.  Basis matrices have pairwise disjoint
  // supports, so peeling by lead entry is exact; the residual is checked.
  AlgebraElement express(Mat m, unsigned long owner) const {
    AlgebraElement out;
    out.owner = owner;
    for (size_t b = 0; b < elems.size(); ++b) {
      const Mat& mb = elems[b].m;
      int lr = -1, lc = -1;
      for (size_t i = 0; i < mb.size() && lr < 0; ++i)
        for (size_t j = 0; j < mb.size(); ++j)
          if (!is_zero(mb[i][j])) { lr = static_cast<int>(i); lc = static_cast<int>(j); break; }
      if (is_zero(m[lr][lc])) continue;
      Rat c = m[lr][lc] / mb[lr][lc];
      m = add(m, mb, -c);
      out.add(static_cast<int>(b), c);
    }
    if (!mat_zero(m)) throw std::runtime_error("matrix outside the algebra span");
    return out;
  }
};

}  // namespace

void LieSuperalgebra::finalize() {
  roots_ = classify_roots();
  // Cartan Gram and its inverse (small dense Gauss-Jordan).
  const int n = rank_;
  std::vector<std::vector<Rat>> g(n, std::vector<Rat>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g[i][j] = form_[cartan_[i]][cartan_[j]];
  std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n, Rat(0)));
  for (int i = 0; i < n; ++i) inv[i][i] = 1;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (!is_zero(g[r][col])) { piv = r; break; }
    if (piv < 0) throw std::runtime_error("degenerate Cartan Gram matrix");
    std::swap(g[piv], g[col]);
    std::swap(inv[piv], inv[col]);
    Rat d = g[col][col];
    for (int j = 0; j < n; ++j) { g[col][j] /= d; inv[col][j] /= d; }
    for (int r = 0; r < n; ++r) {
      if (r == col || is_zero(g[r][col])) continue;
      Rat f = g[r][col];
      for (int j = 0; j < n; ++j) { g[r][j] -= f * g[col][j]; inv[r][j] -= f * inv[col][j]; }
    }
  }
  cartan_gram_inv_ = inv;

  // Chevalley data per positive even root.
  chevalley_.clear();
  for (const auto& r : roots_.roots) {
    if (!r.positive || r.cls == RootClass::Odd) continue;
    ChevalleyData cd;
    cd.root = r.coords;
    cd.e_plus = r.basis_index;
    cd.e_minus = roots_.space_of.at(root_neg(r.coords));
    cd.coroot = coroot(r.coords);
    if (r.cls == RootClass::EvenLong) {
      RootVec half = r.coords;
      bool exact = true;
      for (auto& v : half) { exact &= (v % 2 == 0); v /= 2; }
      auto it = exact ? roots_.space_of.find(half) : roots_.space_of.end();
      if (it != roots_.space_of.end()) {
        cd.has_odd_pair = true;
        cd.x_plus = it->second;
        cd.x_minus = roots_.space_of.at(root_neg(half));
      }
    }
    chevalley_.push_back(std::move(cd));
  }
}

std::shared_ptr<LieSuperalgebra> LieSuperalgebra::build_osp(int n) {
  if (n < 1) throw std::invalid_argument("osp(1|2n) needs n >= 1");
  const int N = 2 * n + 1;
  auto q = [n](int i) { return 1 + i; };         // i in [0,n)
  auto p = [n](int i) { return 1 + n + i; };

  Builder bld;
  bld.str_sign.assign(N, -1);
  bld.str_sign[0] = 1;

  auto d_mat = [&](int i) {
    return add(unit(N, q(i), q(i)), unit(N, p(i), p(i)), Rat(-1));
  };

  struct RawRoot { RootVec root; bool odd; Mat m; };
  std::vector<RawRoot> raw;
  auto rv = [&](std::initializer_list<std::pair<int, int>> entries) {
    RootVec v(n, 0);
    for (auto [slot, val] : entries) v[slot] = val;
    return v;
  };

  // Raw root vectors of sp(2n) plus the odd 2n-dimensional part.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      raw.push_back({rv({{i, 1}, {j, -1}}), false,
                     add(unit(N, q(i), q(j)), unit(N, p(j), p(i)), Rat(-1))});
    }
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      if (i == j) {
        raw.push_back({rv({{i, 2}}), false, unit(N, q(i), p(i))});
        raw.push_back({rv({{i, -2}}), false, unit(N, p(i), q(i))});
      } else {
        raw.push_back({root_add(rv({{i, 1}}), rv({{j, 1}})), false,
                       add(unit(N, q(i), p(j)), unit(N, q(j), p(i)))});
        raw.push_back({root_add(rv({{i, -1}}), rv({{j, -1}})), false,
                       add(unit(N, p(i), q(j)), unit(N, p(j), q(i)))});
      }
    }
  for (int i = 0; i < n; ++i) {
    raw.push_back({rv({{i, 1}}), true, add(unit(N, 0, p(i)), unit(N, q(i), 0))});
    raw.push_back({rv({{i, -1}}), true, add(unit(N, 0, q(i)), unit(N, p(i), 0), Rat(-1))});
  }

  auto find_raw = [&](const RootVec& r) -> Mat& {
    for (auto& rr : raw)
      if (rr.root == r) return rr.m;
    throw std::runtime_error("missing raw root " + root_str(r));
  };
  auto cartan_coeffs = [&](const Mat& t) {
    std::vector<Rat> c(n);
    for (int i = 0; i < n; ++i) c[i] = t[q(i)][q(i)];
    return c;
  };

  // Per-root normalization to the fixed relation lists.
  for (int i = 0; i < n; ++i) {
    // Long root 2e_i: anchor on the odd vector, e = half anticommutator.
    Mat& xp = find_raw(rv({{i, 1}}));
    Mat e = mul(xp, xp);   // {x,x}/2
    Mat& ep = find_raw(rv({{i, 2}}));
    ep = e;
    Mat& em = find_raw(rv({{i, -2}}));
    Mat t = super_bracket(ep, false, em, false);
    Rat a = 2 * cartan_coeffs(t)[i];   // alpha(t), alpha = 2e_i
    if (is_zero(a)) throw std::runtime_error("degenerate long root normalization");
    em = scale_mat(em, 2 / a);
    Mat& xm = find_raw(rv({{i, -1}}));
    xm = scale_mat(super_bracket(em, false, xp, true), Rat(-1));
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      RootVec alpha = rv({{i, 1}, {j, -1}});
      bool pos = false;
      for (int v : alpha) { if (v != 0) { pos = v > 0; break; } }
      if (!pos) continue;
      Mat& ep = find_raw(alpha);
      Mat& em = find_raw(root_neg(alpha));
      Mat t = super_bracket(ep, false, em, false);
      auto c = cartan_coeffs(t);
      Rat a = c[i] - c[j];
      if (is_zero(a)) throw std::runtime_error("degenerate short root normalization");
      em = scale_mat(em, 2 / a);
    }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      RootVec alpha = root_add(rv({{i, 1}}), rv({{j, 1}}));
      Mat& ep = find_raw(alpha);
      Mat& em = find_raw(root_neg(alpha));
      Mat t = super_bracket(ep, false, em, false);
      auto c = cartan_coeffs(t);
      Rat a = c[i] + c[j];
      if (is_zero(a)) throw std::runtime_error("degenerate short root normalization");
      em = scale_mat(em, 2 / a);
    }

  // Assemble basis: Cartan first, then root vectors in lex-descending order.
  auto A = std::shared_ptr<LieSuperalgebra>(new LieSuperalgebra());
  A->name_ = "osp(1|" + std::to_string(2 * n) + ")";
  A->id_ = next_algebra_id++;
  A->rank_ = n;
  A->dual_coxeter_ = rat(2 * n + 1, 2);
  for (int i = 0; i < n; ++i) {
    bld.elems.push_back({"h" + std::to_string(i + 1), false, RootVec(n, 0), d_mat(i)});
  }
  std::sort(raw.begin(), raw.end(),
            [](const RawRoot& x, const RawRoot& y) { return x.root > y.root; });
  for (const auto& rr : raw) {
    std::string lbl = (rr.odd ? "x" : "e") + root_str(rr.root);
    bld.elems.push_back({lbl, rr.odd, rr.root, rr.m});
  }
  for (int i = 0; i < n; ++i) A->cartan_.push_back(i);
  for (const auto& e : bld.elems) {
    A->basis_labels_.push_back(e.label);
    A->parity_.push_back(e.odd);
    A->root_of_.push_back(e.root);
  }

  // Structure constants from matrix products.
  const int dim = static_cast<int>(bld.elems.size());
  A->bracket_.assign(dim, std::vector<AlgebraElement>(dim));
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      A->bracket_[a][b] = bld.express(
          super_bracket(bld.elems[a].m, bld.elems[a].odd, bld.elems[b].m, bld.elems[b].odd),
          A->id_);

  // Form: scaled supertrace, <theta,theta> = 2 with theta = 2e_1, so the
  // normalization pins <h_theta,h_theta> = 2.
  Mat h_theta = d_mat(0);
  Rat cform = 2 / bld.str(mul(h_theta, h_theta));
  A->form_.assign(dim, std::vector<Rat>(dim));
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      A->form_[a][b] = cform * bld.str(mul(bld.elems[a].m, bld.elems[b].m));

  // Cartan anti-involution from the supertranspose of the realization.
  auto st = [&](const Mat& m) {
    Mat r = zero_mat(N);
    r[0][0] = m[0][0];
    for (int j = 1; j < N; ++j) {
      r[j][0] = m[0][j];      // B -> C
      r[0][j] = -m[j][0];     // C -> -B
    }
    for (int i = 1; i < N; ++i)
      for (int j = 1; j < N; ++j) r[j][i] = m[i][j];
    return r;
  };
  for (int b = 0; b < dim; ++b) {
    AlgebraElement img = bld.express(st(bld.elems[b].m), A->id_);
    if (img.coeff.size() != 1)
      throw std::runtime_error("supertranspose does not permute the basis");
    A->eta_.emplace_back(img.coeff.begin()->first, img.coeff.begin()->second);
  }

  for (int i = 0; i < n - 1; ++i) A->simple_roots_.push_back(rv({{i, 1}, {i + 1, -1}}));
  A->simple_roots_.push_back(rv({{n - 1, 1}}));

  A->finalize();
  return A;
}

std::shared_ptr<LieSuperalgebra> LieSuperalgebra::build_sl2() {
  Builder bld;
  bld.str_sign.assign(2, 1);   // purely even: plain trace
  Mat h = add(unit(2, 0, 0), unit(2, 1, 1), Rat(-1));
  Mat e = unit(2, 0, 1);
  Mat f = unit(2, 1, 0);

  auto A = std::shared_ptr<LieSuperalgebra>(new LieSuperalgebra());
  A->name_ = "sl2";
  A->id_ = next_algebra_id++;
  A->rank_ = 1;
  A->dual_coxeter_ = 2;
  bld.elems.push_back({"h1", false, RootVec{0}, h});
  bld.elems.push_back({"e(2)", false, RootVec{2}, e});
  bld.elems.push_back({"e(-2)", false, RootVec{-2}, f});
  A->cartan_.push_back(0);
  for (const auto& el : bld.elems) {
    A->basis_labels_.push_back(el.label);
    A->parity_.push_back(el.odd);
    A->root_of_.push_back(el.root);
  }
  A->bracket_.assign(3, std::vector<AlgebraElement>(3));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      A->bracket_[a][b] =
          bld.express(super_bracket(bld.elems[a].m, false, bld.elems[b].m, false), A->id_);
  Rat cform = 2 / bld.str(mul(h, h));
  A->form_.assign(3, std::vector<Rat>(3));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      A->form_[a][b] = cform * bld.str(mul(bld.elems[a].m, bld.elems[b].m));
  for (int b = 0; b < 3; ++b) {
    Mat t(2, std::vector<Rat>(2));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) t[j][i] = bld.elems[b].m[i][j];
    AlgebraElement img = bld.express(t, A->id_);
    A->eta_.emplace_back(img.coeff.begin()->first, img.coeff.begin()->second);
  }
  A->simple_roots_.push_back(RootVec{2});
  A->finalize();
  return A;
}

ValidationReport LieSuperalgebra::validate() const {
  ValidationReport rep;
  auto check = [&](const std::string& name, bool ok, const std::string& wit = "") {
    rep.checks.push_back({name, ok, ok ? "" : wit});
  };
  const int d = dim();

  bool anti_ok = true;
  std::string anti_wit;
  for (int a = 0; a < d && anti_ok; ++a)
    for (int b = 0; b < d && anti_ok; ++b) {
      // [a,b] + [b,a] = 0 unless both odd, where {a,b} = {b,a}.
      AlgebraElement diff = bracket_[a][b];
      diff.axpy((parity_[a] && parity_[b]) ? Rat(-1) : Rat(1), bracket_[b][a]);
      if (!diff.is_zero()) {
        anti_ok = false;
        anti_wit = label(a) + "," + label(b);
      }
    }
  check("super-antisymmetry", anti_ok, anti_wit);

  bool jac_ok = true;
  std::string jac_wit;
  for (int a = 0; a < d && jac_ok; ++a)
    for (int b = 0; b < d && jac_ok; ++b)
      for (int c = 0; c < d; ++c) {
        AlgebraElement lhs = bracket(bracket_[a][b], element(c));
        AlgebraElement rhs = bracket(element(a), bracket_[b][c]);
        rhs.axpy((parity_[a] && parity_[b]) ? Rat(1) : Rat(-1),
                 bracket(element(b), bracket_[a][c]));
        lhs.axpy(Rat(-1), rhs);
        if (!lhs.is_zero()) {
          jac_ok = false;
          jac_wit = label(a) + "," + label(b) + "," + label(c);
          break;
        }
      }
  check("super-Jacobi", jac_ok, jac_wit);

  bool even_ok = true, inv_ok = true;
  std::string even_wit, inv_wit;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      if (parity_[a] != parity_[b] && !is_zero(form_[a][b])) {
        even_ok = false;
        even_wit = label(a) + "," + label(b);
      }
      Rat sgn = (parity_[a] && parity_[b]) ? Rat(-1) : Rat(1);
      if (form_[a][b] != sgn * form_[b][a]) {
        even_ok = false;
        even_wit = label(a) + "," + label(b);
      }
    }
  check("form parity/symmetry", even_ok, even_wit);
  for (int a = 0; a < d && inv_ok; ++a)
    for (int b = 0; b < d && inv_ok; ++b)
      for (int c = 0; c < d; ++c) {
        if (form(bracket_[a][b], element(c)) != form(element(a), bracket_[b][c])) {
          inv_ok = false;
          inv_wit = label(a) + "," + label(b) + "," + label(c);
          break;
        }
      }
  check("form invariance", inv_ok, inv_wit);

  bool gram_ok = true;
  for (size_t i = 0; i < cartan_.size(); ++i)
    for (size_t j = 0; j < cartan_.size(); ++j)
      gram_ok &= form_[cartan_[i]][cartan_[j]] == (i == j ? Rat(2) : Rat(0));
  check("Cartan Gram = 2*I", gram_ok);

  bool grad_ok = true;
  std::string grad_wit;
  for (int b = 0; b < d && grad_ok; ++b) {
    for (size_t j = 0; j < cartan_.size(); ++j) {
      AlgebraElement diff = bracket_[cartan_[j]][b];
      diff.axpy(-Rat(root_of_[b][j]), element(b));
      if (!diff.is_zero()) {
        grad_ok = false;
        grad_wit = label(b);
        break;
      }
    }
  }
  check("Cartan eigenvalues match stored roots", grad_ok, grad_wit);

  bool rootsum_ok = true;
  std::string rootsum_wit;
  for (int a = 0; a < d && rootsum_ok; ++a)
    for (int b = 0; b < d; ++b) {
      RootVec sum = root_add(root_of_[a], root_of_[b]);
      for (const auto& [i, c] : bracket_[a][b].coeff)
        if (root_of_[i] != sum) {
          rootsum_ok = false;
          rootsum_wit = label(a) + "," + label(b);
          break;
        }
      if (!rootsum_ok) break;
    }
  check("root-space grading of brackets", rootsum_ok, rootsum_wit);

  bool t_ok = true;
  for (const auto& r : roots_.roots) {
    AlgebraElement t = t_vector(r.coords);
    for (size_t j = 0; j < cartan_.size(); ++j)
      t_ok &= form(t, element(cartan_[j])) == Rat(r.coords[j]);
  }
  check("<t_alpha,h> = alpha(h)", t_ok);

  // Fixed relation lists per positive even root.
  bool rel_ok = true;
  std::string rel_wit;
  auto expect = [&](const AlgebraElement& got, const AlgebraElement& want,
                    const std::string& what) {
    AlgebraElement diff = got;
    diff.axpy(Rat(-1), want);
    if (!diff.is_zero() && rel_ok) {
      rel_ok = false;
      rel_wit = what;
    }
  };
  for (const auto& cd : chevalley_) {
    std::string tag = root_str(cd.root) + ": ";
    AlgebraElement e = element(cd.e_plus), f = element(cd.e_minus);
    const AlgebraElement& h = cd.coroot;
    expect(bracket(e, f), h, tag + "[e,f]=h");
    expect(bracket(h, e), e.scaled(2), tag + "[h,e]=2e");
    expect(bracket(h, f), f.scaled(-2), tag + "[h,f]=-2f");
    Rat norm = root_pairing(cd.root, cd.root);
    if (form(element(cd.e_plus), element(cd.e_minus)) != 2 / norm) {
      rel_ok = false;
      rel_wit = tag + "<e,f>=2/<a,a>";
    }
    if (form(h, h) != 4 / norm) {
      rel_ok = false;
      rel_wit = tag + "<h,h>=4/<a,a>";
    }
    if (!cd.has_odd_pair) continue;
    AlgebraElement xp = element(cd.x_plus), xm = element(cd.x_minus);
    expect(bracket(h, xp), xp, tag + "[h,x+]=x+");
    expect(bracket(h, xm), xm.scaled(-1), tag + "[h,x-]=-x-");
    expect(bracket(e, xp), AlgebraElement{}, tag + "[e,x+]=0");
    expect(bracket(f, xm), AlgebraElement{}, tag + "[f,x-]=0");
    expect(bracket(f, xp), xm.scaled(-1), tag + "[f,x+]=-x-");
    expect(bracket(e, xm), xp.scaled(-1), tag + "[e,x-]=-x+");
    expect(bracket(xp, xp), e.scaled(2), tag + "{x+,x+}=2e");
    expect(bracket(xm, xm), f.scaled(-2), tag + "{x-,x-}=-2f");
    expect(bracket(xp, xm), h, tag + "{x+,x-}=h");
    if (form(xp, xm) != 2 || form(xm, xp) != -2) {
      rel_ok = false;
      rel_wit = tag + "<x+,x->=2";
    }
  }
  check("rank-1 relation lists", rel_ok, rel_wit);

  bool eta_ok = true;
  std::string eta_wit;
  auto eta_elem = [&](const AlgebraElement& x) {
    AlgebraElement out;
    out.owner = id_;
    for (const auto& [i, c] : x.coeff) out.add(eta_[i].first, c * eta_[i].second);
    return out;
  };
  for (int a = 0; a < d && eta_ok; ++a) {
    if (root_of_[eta_[a].first] != root_neg(root_of_[a])) {
      eta_ok = false;
      eta_wit = label(a);
    }
    for (int b = 0; b < d; ++b) {
      AlgebraElement lhs = eta_elem(bracket_[a][b]);
      AlgebraElement rhs = bracket(eta_elem(element(b)), eta_elem(element(a)))
                               .scaled((parity_[a] && parity_[b]) ? Rat(-1) : Rat(1));
      lhs.axpy(Rat(-1), rhs);
      if (!lhs.is_zero()) {
        eta_ok = false;
        eta_wit = label(a) + "," + label(b);
        break;
      }
    }
  }
  check("eta is a super anti-involution mapping g_a to g_-a", eta_ok, eta_wit);

  if (rank_ >= 1 && name_ != "sl2") {
    const int n = rank_;
    bool count_ok = roots_.count(RootClass::EvenLong) == 2 * n &&
                    roots_.count(RootClass::EvenShort) == 2 * n * (n - 1) &&
                    roots_.count(RootClass::Odd) == 2 * n &&
                    d == 2 * n * n + 3 * n;
    check("root counts for osp(1|2n)", count_ok);
  }
  check("<theta,theta> = 2", root_pairing(roots_.highest_root, roots_.highest_root) == 2);

  return rep;
}

std::string LieSuperalgebra::dump_json() const {
  nlohmann::ordered_json j;
  j["algebra"] = name_;
  j["rank"] = rank_;
  j["dim"] = dim();
  j["basis"] = nlohmann::ordered_json::array();
  for (int b = 0; b < dim(); ++b) {
    nlohmann::ordered_json e;
    e["index"] = b;
    e["label"] = basis_labels_[b];
    e["parity"] = parity_[b] ? 1 : 0;
    e["root"] = root_of_[b];
    j["basis"].push_back(e);
  }
  j["brackets"] = nlohmann::ordered_json::array();
  for (int a = 0; a < dim(); ++a)
    for (int b = 0; b < dim(); ++b) {
      if (bracket_[a][b].is_zero()) continue;
      nlohmann::ordered_json e;
      e["a"] = a;
      e["b"] = b;
      auto terms = nlohmann::ordered_json::array();
      for (const auto& [i, c] : bracket_[a][b].coeff)
        terms.push_back({{"basis", i}, {"coeff", rat_str(c)}});
      e["terms"] = terms;
      j["brackets"].push_back(e);
    }
  j["form"] = nlohmann::ordered_json::array();
  for (int a = 0; a < dim(); ++a)
    for (int b = 0; b < dim(); ++b) {
      if (is_zero(form_[a][b])) continue;
      j["form"].push_back({{"a", a}, {"b", b}, {"value", rat_str(form_[a][b])}});
    }
  return j.dump(2);
}

}  // namespace paraferm
