#include "fellb/group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <stdexcept>

namespace fellb {

namespace {

void check_table(const std::vector<std::vector<int>>& t) {
  const int n = static_cast<int>(t.size());
  if (n == 0) throw std::invalid_argument("group: empty Cayley table");
  for (const auto& row : t) {
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("group: Cayley table not square");
    for (int v : row)
      if (v < 0 || v >= n) throw std::invalid_argument("group: table entry out of range");
  }
  // Latin square: each row and column a permutation.
  for (int i = 0; i < n; ++i) {
    std::vector<bool> row_seen(n, false), col_seen(n, false);
    for (int j = 0; j < n; ++j) {
      if (row_seen[t[i][j]] || col_seen[t[j][i]])
        throw std::invalid_argument("group: Cayley table is not a Latin square");
      row_seen[t[i][j]] = true;
      col_seen[t[j][i]] = true;
    }
  }
  // Identity at index 0 by convention.
  for (int s = 0; s < n; ++s)
    if (t[0][s] != s || t[s][0] != s)
      throw std::invalid_argument("group: index 0 is not an identity element");
  // Associativity, exhaustively.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (t[t[a][b]][c] != t[a][t[b][c]])
          throw std::invalid_argument("group: multiplication is not associative");
}

}  // namespace

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> cayley,
                                    std::vector<std::string> labels) {
  check_table(cayley);
  FiniteGroup g;
  g.order_ = static_cast<int>(cayley.size());
  g.cayley_ = std::move(cayley);
  g.inverse_.assign(g.order_, -1);
  for (int s = 0; s < g.order_; ++s)
    for (int t = 0; t < g.order_; ++t)
      if (g.cayley_[s][t] == 0) g.inverse_[s] = t;
  for (int s = 0; s < g.order_; ++s)
    if (g.cayley_[s][g.inverse_[s]] != 0 || g.cayley_[g.inverse_[s]][s] != 0)
      throw std::invalid_argument("group: inverses inconsistent");
  if (labels.empty()) {
    labels.reserve(g.order_);
    for (int s = 0; s < g.order_; ++s) labels.push_back("g" + std::to_string(s));
  } else if (static_cast<int>(labels.size()) != g.order_) {
    throw std::invalid_argument("group: label count mismatch");
  }
  g.labels_ = std::move(labels);
  return g;
}

bool FiniteGroup::is_abelian() const {
  for (int s = 0; s < order_; ++s)
    for (int t = s + 1; t < order_; ++t)
      if (cayley_[s][t] != cayley_[t][s]) return false;
  return true;
}

std::vector<int> FiniteGroup::center() const {
  std::vector<int> z;
  for (int s = 0; s < order_; ++s) {
    bool central = true;
    for (int t = 0; t < order_ && central; ++t) central = cayley_[s][t] == cayley_[t][s];
    if (central) z.push_back(s);
  }
  return z;
}

int FiniteGroup::element_order(int s) const {
  int k = 1, x = s;
  while (x != 0) {
    x = cayley_[x][s];
    ++k;
  }
  return k;
}

FiniteGroup cyclic(int n) {
  if (n < 1) throw std::invalid_argument("cyclic: order must be positive");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  std::vector<std::string> labels(n);
  for (int a = 0; a < n; ++a) {
    labels[a] = std::to_string(a);
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  }
  return FiniteGroup::from_table(std::move(t), std::move(labels));
}

FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const int n = g.order() * h.order();
  auto idx = [&](int a, int b) { return a * h.order() + b; };
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  std::vector<std::string> labels(n);
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < h.order(); ++b) {
      labels[idx(a, b)] = "(" + g.labels()[a] + "," + h.labels()[b] + ")";
      for (int c = 0; c < g.order(); ++c)
        for (int d = 0; d < h.order(); ++d)
          t[idx(a, b)][idx(c, d)] = idx(g.mul(a, c), h.mul(b, d));
    }
  return FiniteGroup::from_table(std::move(t), std::move(labels));
}

FiniteGroup dihedral(int n) {
  if (n < 2) throw std::invalid_argument("dihedral: need n >= 2");
  // Elements r^a s^c, index a + n*c; s r = r^{-1} s.
  const int order = 2 * n;
  auto idx = [&](int a, int c) { return a + n * c; };
  std::vector<std::vector<int>> t(order, std::vector<int>(order));
  std::vector<std::string> labels(order);
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < 2; ++c) {
      labels[idx(a, c)] = (c ? "sr" : "r") + std::to_string(a);
      for (int b = 0; b < n; ++b)
        for (int d = 0; d < 2; ++d) {
          int aa = c == 0 ? (a + b) % n : (a - b % n + n) % n;
          t[idx(a, c)][idx(b, d)] = idx(aa, c ^ d);
        }
    }
  return FiniteGroup::from_table(std::move(t), std::move(labels));
}

FiniteGroup symmetric(int n) {
  if (n < 1 || n > 5) throw std::invalid_argument("symmetric: need 1 <= n <= 5");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  const int order = static_cast<int>(perms.size());
  auto find = [&](const std::vector<int>& q) {
    return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
  };
  std::vector<std::vector<int>> t(order, std::vector<int>(order));
  std::vector<std::string> labels(order);
  for (int i = 0; i < order; ++i) {
    std::string lab = "[";
    for (int k = 0; k < n; ++k) lab += std::to_string(perms[i][k]);
    labels[i] = lab + "]";
    for (int j = 0; j < order; ++j) {
      std::vector<int> comp(n);
      for (int k = 0; k < n; ++k) comp[k] = perms[i][perms[j][k]];  // (s.t)(k) = s(t(k))
      t[i][j] = find(comp);
    }
  }
  return FiniteGroup::from_table(std::move(t), std::move(labels));
}

FiniteGroup klein_four() { return direct_product(cyclic(2), cyclic(2)); }

namespace {

ComplexMatrix regular_perm_matrix(const FiniteGroup& g, int s) {
  const int n = g.order();
  ComplexMatrix p = ComplexMatrix::Zero(n, n);
  for (int t = 0; t < n; ++t) p(g.mul(s, t), t) = 1.0;
  return p;
}

Complex snap_root_of_unity(Complex z, int order) {
  const double theta = std::arg(z);
  const double tau = 2.0 * std::numbers::pi;
  long k = std::lround(theta * order / tau);
  k = ((k % order) + order) % order;
  if ((4 * k) % order == 0) {  // axis values exactly
    switch ((4 * k / order) % 4) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return std::polar(1.0, tau * static_cast<double>(k) / order);
}

}  // namespace

std::vector<Character> dual_group(const FiniteGroup& g, std::uint64_t seed) {
  if (!g.is_abelian()) throw std::invalid_argument("dual_group: group is not abelian");
  const int n = g.order();
  std::vector<ComplexMatrix> perm(n);
  for (int s = 0; s < n; ++s) perm[s] = regular_perm_matrix(g, s);

  Rng rng(seed);
  std::vector<Character> chars;
  for (int attempt = 0; attempt < 32; ++attempt) {
    // Generic Hermitian element of the (commutative) group algebra; its
    // eigenvectors are the character vectors.
    ComplexMatrix h = ComplexMatrix::Zero(n, n);
    for (int s = 0; s < n; ++s) {
      Complex c = rng.cgauss();
      h += c * perm[s] + std::conj(c) * perm[s].adjoint();
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
    const RealVector& ev = es.eigenvalues();
    bool distinct = true;
    for (int i = 0; i + 1 < n; ++i)
      if (std::abs(ev(i + 1) - ev(i)) < 1e-8 * (1.0 + std::abs(ev(n - 1)))) distinct = false;
    if (!distinct) continue;

    chars.clear();
    chars.reserve(n);
    for (int i = 0; i < n; ++i) {
      ComplexVector v = es.eigenvectors().col(i);
      Character chi;
      chi.values.resize(n);
      for (int s = 0; s < n; ++s) {
        // lambda_s v = conj(chi(s)) v, so chi(s) = conj(<v, P_s v>).
        Complex val = std::conj((v.adjoint() * (perm[s] * v))(0, 0));
        chi.values[s] = snap_root_of_unity(val, g.element_order(s));
      }
      chars.push_back(std::move(chi));
    }
    // Validate multiplicativity after snapping.
    double defect = 0.0;
    for (const auto& chi : chars)
      for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t)
          defect = std::max(defect, std::abs(chi.values[g.mul(s, t)] - chi.values[s] * chi.values[t]));
    if (defect > 1e-12) continue;

    // Deterministic order: trivial character first, then lexicographic on
    // snapped phase indices.
    std::sort(chars.begin(), chars.end(), [&](const Character& a, const Character& b) {
      for (int s = 0; s < n; ++s) {
        double pa = std::arg(a.values[s]), pb = std::arg(b.values[s]);
        if (pa < -1e-9) pa += 2.0 * std::numbers::pi;
        if (pb < -1e-9) pb += 2.0 * std::numbers::pi;
        if (std::abs(pa - pb) > 1e-9) return pa < pb;
      }
      return false;
    });
    return chars;
  }
  throw degeneracy_error("dual_group: could not separate characters");
}

FiniteGroup dual_group_as_group(const FiniteGroup& g, const std::vector<Character>& chars) {
  const int n = static_cast<int>(chars.size());
  auto find = [&](const std::vector<Complex>& vals) {
    for (int i = 0; i < n; ++i) {
      double d = 0.0;
      for (int s = 0; s < g.order(); ++s) d = std::max(d, std::abs(chars[i].values[s] - vals[s]));
      if (d < 1e-8) return i;
    }
    throw std::invalid_argument("dual_group_as_group: product character not found");
  };
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<Complex> prod(g.order());
      for (int s = 0; s < g.order(); ++s) prod[s] = chars[i].values[s] * chars[j].values[s];
      t[i][j] = find(prod);
    }
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = "chi" + std::to_string(i);
  return FiniteGroup::from_table(std::move(t), std::move(labels));
}

double character_orthogonality_defect(const FiniteGroup& g, const std::vector<Character>& chars) {
  double defect = 0.0;
  const int n = g.order();
  for (std::size_t i = 0; i < chars.size(); ++i)
    for (std::size_t j = 0; j < chars.size(); ++j) {
      Complex acc = 0.0;
      for (int s = 0; s < n; ++s) acc += chars[i].values[s] * std::conj(chars[j].values[s]);
      Complex expect = i == j ? Complex(n, 0) : Complex(0, 0);
      defect = std::max(defect, std::abs(acc - expect));
    }
  return defect;
}

std::vector<int> folner_certificate(const FiniteGroup& g, const std::vector<int>& k, double eps) {
  if (k.empty()) throw std::invalid_argument("folner_certificate: K must be nonempty");
  if (!(eps > 0.0)) throw std::invalid_argument("folner_certificate: eps must be positive");
  for (int s : k)
    if (s < 0 || s >= g.order()) throw std::invalid_argument("folner_certificate: K element out of range");
  std::vector<int> c(g.order());
  std::iota(c.begin(), c.end(), 0);
  // |KC| = |G| < (1+eps)|G| holds strictly for every eps > 0.
  std::set<int> kc;
  for (int a : k)
    for (int b : c) kc.insert(g.mul(a, b));
  if (!(static_cast<double>(kc.size()) < (1.0 + eps) * static_cast<double>(c.size())))
    throw std::logic_error("folner_certificate: inequality failed");
  return c;
}

}  // namespace fellb
