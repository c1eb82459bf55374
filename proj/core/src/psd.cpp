#include "spherebound/psd.hpp"

#include "spherebound/common.hpp"

namespace spherebound {

RationalMatrix identity_matrix(std::size_t size) {
  RationalMatrix m(size, std::vector<Rational>(size, Rational(0)));
  for (std::size_t i = 0; i < size; ++i) m[i][i] = 1;
  return m;
}

RationalMatrix corner_matrix(std::size_t size) {
  RationalMatrix m(size, std::vector<Rational>(size, Rational(0)));
  if (size > 0) m[0][0] = 1;
  return m;
}

bool is_square(const RationalMatrix& m) {
  for (const auto& row : m) {
    if (row.size() != m.size()) return false;
  }
  return true;
}

bool is_symmetric(const RationalMatrix& m) {
  if (!is_square(m)) return false;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      if (m[i][j] != m[j][i]) return false;
    }
  }
  return true;
}

std::vector<Rational> characteristic_polynomial(const RationalMatrix& a) {
  // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{r-k+1} I, c_{r-k} = -tr(A M_k) / k.
  const std::size_t r = a.size();
  std::vector<Rational> c(r + 1, Rational(0));
  c[r] = 1;
  RationalMatrix mk(r, std::vector<Rational>(r, Rational(0)));
  for (std::size_t k = 1; k <= r; ++k) {
    RationalMatrix next(r, std::vector<Rational>(r, Rational(0)));
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t l = 0; l < r; ++l) {
        if (a[i][l] == 0) continue;
        for (std::size_t j = 0; j < r; ++j) next[i][j] += a[i][l] * mk[l][j];
      }
      next[i][i] += c[r - k + 1];
    }
    mk = std::move(next);
    Rational trace = 0;
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t l = 0; l < r; ++l) trace += a[i][l] * mk[l][i];
    }
    c[r - k] = -trace / static_cast<long>(k);
  }
  return c;
}

Rational quadratic_form(const RationalMatrix& m, const std::vector<Rational>& v) {
  Rational sum = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < m.size(); ++j) sum += v[i] * m[i][j] * v[j];
  }
  return sum;
}

namespace {

// Symmetric elimination on the index set `live`. Returns a vector with
// v^T M v < 0 if one exists.
std::optional<std::vector<Rational>> negative_direction(RationalMatrix m, std::vector<std::size_t> live) {
  const std::size_t r = m.size();
  // Stack of pivots so the witness can be lifted back through each step.
  struct Pivot {
    std::size_t p;
    std::vector<std::size_t> rest;
    std::vector<Rational> column;
  };
  std::vector<Pivot> pivots;
  std::optional<std::vector<Rational>> found;
  while (!live.empty() && !found) {
    std::optional<std::size_t> pivot;
    for (std::size_t i : live) {
      if (m[i][i] < 0) {
        std::vector<Rational> v(r, Rational(0));
        v[i] = 1;
        found = v;
        break;
      }
      if (m[i][i] == 0) {
        for (std::size_t j : live) {
          if (j != i && m[i][j] != 0) {
            // (t e_i + e_j)^T M (t e_i + e_j) = 2 t m_ij + m_jj = -1.
            std::vector<Rational> v(r, Rational(0));
            v[i] = -(m[j][j] + 1) / (2 * m[i][j]);
            v[j] = 1;
            found = v;
            break;
          }
        }
        if (found) break;
      } else if (!pivot) {
        pivot = i;
      }
    }
    if (found) break;
    if (!pivot) break;  // every remaining row is zero
    const std::size_t p = *pivot;
    Pivot step{p, {}, {}};
    for (std::size_t i : live) {
      if (i != p) {
        step.rest.push_back(i);
        step.column.push_back(m[i][p]);
      }
    }
    for (std::size_t a = 0; a < step.rest.size(); ++a) {
      for (std::size_t b = 0; b < step.rest.size(); ++b) {
        m[step.rest[a]][step.rest[b]] -= step.column[a] * step.column[b] / m[p][p];
      }
    }
    live = step.rest;
    pivots.push_back(std::move(step));
  }
  if (!found) return std::nullopt;
  // Lift: v_p = -(column . v_rest) / m_pp keeps the form value unchanged.
  std::vector<Rational> v = *found;
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    Rational dot = 0;
    for (std::size_t a = 0; a < it->rest.size(); ++a) dot += it->column[a] * v[it->rest[a]];
    v[it->p] = -dot / m[it->p][it->p];
  }
  return v;
}

}  // namespace

PsdResult check_psd(const RationalMatrix& m) {
  if (!is_square(m)) throw UnsupportedError("PSD check needs a square matrix");
  if (!is_symmetric(m)) throw UnsupportedError("PSD check needs a symmetric matrix");
  PsdResult out;
  const std::size_t r = m.size();
  auto c = characteristic_polynomial(m);
  out.psd = true;
  for (std::size_t i = 1; i <= r; ++i) {
    Rational e = c[r - i];
    if (i % 2 == 1) e = -e;
    out.elementary.push_back(e);
    if (e < 0) out.psd = false;
  }
  if (!out.psd) {
    std::vector<std::size_t> live(r);
    for (std::size_t i = 0; i < r; ++i) live[i] = i;
    out.witness = negative_direction(m, live);
    if (!out.witness || quadratic_form(m, *out.witness) >= 0) {
      throw Error("internal: PSD verdict and elimination disagree");
    }
  }
  return out;
}

}  // namespace spherebound
