#include "paraferm/exactla.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>

namespace paraferm::exactla {

SparseRow row_from_dense(const std::vector<Rat>& v) {
  SparseRow r;
  for (int j = 0; j < static_cast<int>(v.size()); ++j)
    if (!is_zero(v[j])) r.emplace_back(j, v[j]);
  return r;
}

std::vector<Rat> row_to_dense(const SparseRow& r, int ncols) {
  std::vector<Rat> v(ncols, Rat(0));
  for (const auto& [j, c] : r) v[j] = c;
  return v;
}

// r += c * s, sparse merge.
static SparseRow axpy(const SparseRow& r, const Rat& c, const SparseRow& s) {
  SparseRow out;
  out.reserve(r.size() + s.size());
  size_t i = 0, j = 0;
  while (i < r.size() || j < s.size()) {
    if (j == s.size() || (i < r.size() && r[i].first < s[j].first)) {
      out.push_back(r[i++]);
    } else if (i == r.size() || s[j].first < r[i].first) {
      Rat v = c * s[j].second;
      if (!is_zero(v)) out.emplace_back(s[j].first, v);
      ++j;
    } else {
      Rat v = r[i].second + c * s[j].second;
      if (!is_zero(v)) out.emplace_back(r[i].first, v);
      ++i;
      ++j;
    }
  }
  return out;
}

static SparseRow scale(const SparseRow& r, const Rat& c) {
  SparseRow out;
  out.reserve(r.size());
  for (const auto& [j, v] : r) out.emplace_back(j, c * v);
  return out;
}

// Clear denominators and divide by the content so every entry is an
// integer with gcd 1; keeps intermediate growth in check during the
// forward pass.
static void make_primitive(SparseRow& r) {
  if (r.empty()) return;
  mpz_class den(1), num_gcd(0);
  for (const auto& [j, v] : r) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den().get_mpz_t());
  for (const auto& [j, v] : r) {
    mpz_class t = v.get_num() * (den / v.get_den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.get_mpz_t());
  }
  Rat f(den, num_gcd);
  f.canonicalize();
  for (auto& [j, v] : r) {
    v *= f;
    v.canonicalize();
  }
}

bool absorb(Subspace& b, const SparseRow& v) {
  SparseRow w = v;
  // Forward reduce against existing RREF rows.
  for (size_t i = 0; i < b.rows.size() && !w.empty(); ++i) {
    int p = b.pivots[i];
    auto it = std::lower_bound(w.begin(), w.end(), p,
                               [](const auto& a, int col) { return a.first < col; });
    if (it != w.end() && it->first == p) w = axpy(w, -it->second, b.rows[i]);
  }
  if (w.empty()) return false;
  // Normalize pivot to 1, back-reduce the existing rows, insert in pivot order.
  Rat inv = 1 / w.front().second;
  w = scale(w, inv);
  int p = w.front().first;
  for (size_t i = 0; i < b.rows.size(); ++i) {
    auto it = std::lower_bound(b.rows[i].begin(), b.rows[i].end(), p,
                               [](const auto& a, int col) { return a.first < col; });
    if (it != b.rows[i].end() && it->first == p)
      b.rows[i] = axpy(b.rows[i], -it->second, w);
  }
  auto pos = std::lower_bound(b.pivots.begin(), b.pivots.end(), p);
  size_t idx = pos - b.pivots.begin();
  b.pivots.insert(pos, p);
  b.rows.insert(b.rows.begin() + idx, std::move(w));
  return true;
}

Subspace rref(const SparseMatrix& m) {
  // Forward pass on primitive integer rows (division deferred), then the
  // canonical back-substitution happens inside absorb.
  Subspace b;
  b.ambient = m.ncols;
  for (SparseRow r : m.rows) {
    make_primitive(r);
    absorb(b, r);
  }
  return b;
}

Subspace kernel(const SparseMatrix& m) {
  Subspace r = rref(m);
  std::map<int, const SparseRow*> pivot_row;
  for (size_t i = 0; i < r.rows.size(); ++i) pivot_row[r.pivots[i]] = &r.rows[i];
  SparseMatrix basis(m.ncols);
  for (int f = 0; f < m.ncols; ++f) {
    if (pivot_row.count(f)) continue;
    SparseRow v;
    // v[f] = 1, v[p] = -row_p[f] for each pivot column p.
    std::vector<std::pair<int, Rat>> entries;
    entries.emplace_back(f, Rat(1));
    for (const auto& [p, row] : pivot_row) {
      auto it = std::lower_bound(row->begin(), row->end(), f,
                                 [](const auto& a, int col) { return a.first < col; });
      if (it != row->end() && it->first == f) entries.emplace_back(p, -it->second);
    }
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    basis.add_row(std::move(entries));
  }
  return rref(basis);
}

std::optional<std::vector<Rat>> membership(const Subspace& b, const SparseRow& v) {
  std::vector<Rat> coords(b.dim(), Rat(0));
  SparseRow w = v;
  for (size_t i = 0; i < b.rows.size() && !w.empty(); ++i) {
    int p = b.pivots[i];
    auto it = std::lower_bound(w.begin(), w.end(), p,
                               [](const auto& a, int col) { return a.first < col; });
    if (it != w.end() && it->first == p) {
      coords[i] = it->second;
      w = axpy(w, -it->second, b.rows[i]);
    }
  }
  if (!w.empty()) return std::nullopt;
  return coords;
}

bool contains(const Subspace& b, const SparseRow& v) {
  return membership(b, v).has_value();
}

Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.ambient != b.ambient) throw std::invalid_argument("subspace ambient mismatch");
  SparseMatrix m(a.ambient);
  for (const auto& r : a.rows) m.add_row(r);
  for (const auto& r : b.rows) m.add_row(r);
  return rref(m);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient != b.ambient) throw std::invalid_argument("subspace ambient mismatch");
  const int n = a.ambient;
  // Zassenhaus: reduce [A A; B 0]; rows with zero left half carry the
  // intersection in the right half.
  SparseMatrix m(2 * n);
  for (const auto& r : a.rows) {
    SparseRow w = r;
    for (const auto& [j, c] : r) w.emplace_back(j + n, c);
    m.add_row(std::move(w));
  }
  for (const auto& r : b.rows) m.add_row(r);
  Subspace z = rref(m);
  SparseMatrix inter(n);
  for (size_t i = 0; i < z.rows.size(); ++i) {
    if (z.pivots[i] < n) continue;
    SparseRow w;
    for (const auto& [j, c] : z.rows[i]) w.emplace_back(j - n, c);
    inter.add_row(std::move(w));
  }
  return rref(inter);
}

Subspace radical(const SparseMatrix& gram) {
  if (gram.nrows() != gram.ncols) throw std::invalid_argument("radical: matrix not square");
  return kernel(gram);
}

SparseRow apply(const SparseMatrix& m, const SparseRow& v) {
  SparseRow out;
  for (int i = 0; i < m.nrows(); ++i) {
    Rat acc(0);
    size_t a = 0, bpos = 0;
    const SparseRow& row = m.rows[i];
    while (a < row.size() && bpos < v.size()) {
      if (row[a].first < v[bpos].first) ++a;
      else if (v[bpos].first < row[a].first) ++bpos;
      else acc += row[a++].second * v[bpos++].second;
    }
    if (!is_zero(acc)) out.emplace_back(i, acc);
  }
  return out;
}

}  // namespace paraferm::exactla
