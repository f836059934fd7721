#include "ian/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace ian {

namespace {

constexpr Scalar kInf = std::numeric_limits<Scalar>::infinity();
using RowVec = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

}  // namespace

// Equality form: A x - s = b with s >= 0. The basis always consists of the
// structural set Bx plus the surplus of every row outside the tight set R,
// with |R| = |Bx| = k, so the only matrix ever factorized is the k x k
// working block W = A[R, Bx]. Its explicit inverse is maintained under the
// four possible basis exchanges (column replace, grow, shrink, row replace)
// with rank-one updates and rebuilt from scratch every refactor_every pivots.
SimplexResult solve_inequality_lp(const InequalityLP& lp, const SimplexOptions& opt) {
  const Index n = lp.num_vars;
  const Index m = static_cast<Index>(lp.rows.size());
  if (n < 0) throw std::invalid_argument("negative variable count");
  if (lp.upper.size() != n || lp.cost.size() != n)
    throw std::invalid_argument("upper and cost must have one entry per variable");
  if (lp.rhs.size() != m) throw std::invalid_argument("rhs must have one entry per row");
  for (Index j = 0; j < n; ++j)
    if (!(lp.upper[j] > 0) || !std::isfinite(lp.upper[j]))
      throw std::invalid_argument("upper bounds must be positive and finite");

  // Column view of A.
  std::vector<std::vector<std::pair<Index, Scalar>>> cols(static_cast<std::size_t>(n));
  for (Index r = 0; r < m; ++r)
    for (const auto& [j, a] : lp.rows[static_cast<std::size_t>(r)]) {
      if (j < 0 || j >= n) throw std::invalid_argument("row references an unknown variable");
      if (a != 0) cols[static_cast<std::size_t>(j)].push_back({r, a});
    }

  const long max_iter =
      opt.max_iterations >= 0 ? opt.max_iterations : static_cast<long>(200 * (m + n) + 10000);

  const Scalar pivot_tol = 1e-11;  // smallest acceptable pivot magnitude
  const Scalar weak_pivot = 1e-7;  // refactor before accepting anything below this
  const Scalar degen_tol = 1e-12;  // steps at most this long count as degenerate

  // Structural state: 0 = at lower bound (0), 1 = at upper bound, 2 = basic.
  // A row is tight (its surplus nonbasic at 0) iff rowpos[r] >= 0; every
  // other row keeps its surplus basic at value s[r] = (A x - b)_r.
  Vector x = lp.upper;
  std::vector<int> xstate(static_cast<std::size_t>(n), 1);
  Vector s(m);
  std::vector<Index> R, Bx;
  std::vector<Index> rowpos(static_cast<std::size_t>(m), -1);
  std::vector<Index> colpos(static_cast<std::size_t>(n), -1);
  Matrix Winv(0, 0);

  auto recompute_s = [&]() {
    for (Index r = 0; r < m; ++r) {
      Scalar v = -lp.rhs[r];
      for (const auto& [j, a] : lp.rows[static_cast<std::size_t>(r)]) v += a * x[j];
      s[r] = v;
    }
  };

  recompute_s();
  for (Index r = 0; r < m; ++r)
    if (s[r] < -opt.primal_tol * std::max(Scalar(1), std::abs(lp.rhs[r])))
      throw std::runtime_error("x = upper violates row " + std::to_string(r) +
                               "; the bounds must satisfy every constraint");

  auto refactor = [&]() {
    const Index k = static_cast<Index>(R.size());
    if (k == 0) {
      Winv.resize(0, 0);
      recompute_s();
      return;
    }
    Matrix w = Matrix::Zero(k, k);
    for (Index p = 0; p < k; ++p)
      for (const auto& [j, a] : lp.rows[static_cast<std::size_t>(R[static_cast<std::size_t>(p)])])
        if (colpos[static_cast<std::size_t>(j)] >= 0)
          w(p, colpos[static_cast<std::size_t>(j)]) = a;
    Eigen::FullPivLU<Matrix> lu(w);
    if (!lu.isInvertible()) throw std::runtime_error("working basis became singular");
    Winv = lu.inverse();
    // Recompute basic structural values from the tight rows to kill drift.
    Vector rhs(k);
    for (Index p = 0; p < k; ++p) {
      Scalar v = lp.rhs[R[static_cast<std::size_t>(p)]];
      for (const auto& [j, a] : lp.rows[static_cast<std::size_t>(R[static_cast<std::size_t>(p)])])
        if (colpos[static_cast<std::size_t>(j)] < 0) v -= a * x[j];
      rhs[p] = v;
    }
    Vector xb = Winv * rhs;
    for (Index q = 0; q < k; ++q) x[Bx[static_cast<std::size_t>(q)]] = xb[q];
    recompute_s();
    for (Index p = 0; p < k; ++p) s[R[static_cast<std::size_t>(p)]] = 0;
  };

  SimplexResult res;
  long pivots_since_refactor = 0;
  long degen_streak = 0;
  bool confirmed = false;  // set after a clean refactor right before exit
  bool bland = false;

  for (;;) {
    if (res.iterations > max_iter) throw std::runtime_error("simplex iteration limit exceeded");
    const Index k = static_cast<Index>(R.size());

    // Duals on tight rows: y_R = W^-T c_Bx; y is zero elsewhere.
    Vector cb(k);
    for (Index q = 0; q < k; ++q) cb[q] = lp.cost[Bx[static_cast<std::size_t>(q)]];
    Vector yr = Winv.transpose() * cb;

    // Entering selection: largest violation (Dantzig) with lowest-index tie
    // breaks, or plain lowest index once Bland's rule is engaged.
    Index ent_var = -1;
    bool ent_structural = true;
    Index ent_idx = -1;
    int dir = +1;
    Scalar best_viol = 0;
    auto consider = [&](Index gvar, bool structural, Index idx, int d, Scalar viol) {
      if (viol <= opt.dual_tol) return false;
      if (bland || viol > best_viol) {
        ent_var = gvar;
        ent_structural = structural;
        ent_idx = idx;
        dir = d;
        best_viol = viol;
      }
      return bland;  // first eligible wins under Bland
    };
    bool stop_scan = false;
    for (Index j = 0; j < n && !stop_scan; ++j) {
      if (xstate[static_cast<std::size_t>(j)] == 2) continue;
      Scalar dj = lp.cost[j];
      for (const auto& [r, a] : cols[static_cast<std::size_t>(j)]) {
        const Index p = rowpos[static_cast<std::size_t>(r)];
        if (p >= 0) dj -= a * yr[p];
      }
      if (xstate[static_cast<std::size_t>(j)] == 0)
        stop_scan = consider(j, true, j, +1, -dj);
      else
        stop_scan = consider(j, true, j, -1, dj);
    }
    for (Index r = 0; r < m && !stop_scan; ++r) {
      const Index p = rowpos[static_cast<std::size_t>(r)];
      if (p < 0) continue;
      stop_scan = consider(n + r, false, r, +1, -yr[p]);
    }

    if (ent_var < 0) {
      // Dual feasible. Refactor once and re-price before trusting it.
      if (!confirmed) {
        refactor();
        pivots_since_refactor = 0;
        confirmed = true;
        continue;
      }
      break;
    }

    // FTRAN: g = B^-1 (entering column), split into the basic structural
    // part z (over Bx) and the basic surplus part gs (over rows outside R).
    Vector z;
    if (ent_structural) {
      Vector ar = Vector::Zero(k);
      for (const auto& [r, a] : cols[static_cast<std::size_t>(ent_idx)])
        if (rowpos[static_cast<std::size_t>(r)] >= 0) ar[rowpos[static_cast<std::size_t>(r)]] = a;
      z = Winv * ar;
    } else {
      z = -Winv.col(rowpos[static_cast<std::size_t>(ent_idx)]);
    }
    Vector gs = Vector::Zero(m);
    for (Index q = 0; q < k; ++q) {
      const Scalar zq = z[q];
      if (zq == 0) continue;
      for (const auto& [r, a] : cols[static_cast<std::size_t>(Bx[static_cast<std::size_t>(q)])])
        if (rowpos[static_cast<std::size_t>(r)] < 0) gs[r] += a * zq;
    }
    if (ent_structural)
      for (const auto& [r, a] : cols[static_cast<std::size_t>(ent_idx)])
        if (rowpos[static_cast<std::size_t>(r)] < 0) gs[r] -= a;

    // Ratio test. Basic values move by -dir * t * g as the entering variable
    // moves by dir * t; collect every blocking candidate.
    struct Cand {
      Scalar ratio;
      Scalar mag;  // |pivot|
      Index gvar;
      int kind;  // 0 structural (payload = position in Bx), 1 surplus (payload = row)
      Index payload;
      int hits_upper;
    };
    std::vector<Cand> cands;
    Scalar tmin = kInf;
    for (Index p = 0; p < k; ++p) {
      const Index j = Bx[static_cast<std::size_t>(p)];
      const Scalar w = dir * z[p];
      if (w > pivot_tol) {
        const Scalar ratio = std::max(Scalar(0), x[j] / w);
        cands.push_back({ratio, std::abs(z[p]), j, 0, p, 0});
        tmin = std::min(tmin, ratio);
      } else if (w < -pivot_tol) {
        const Scalar ratio = std::max(Scalar(0), (lp.upper[j] - x[j]) / (-w));
        cands.push_back({ratio, std::abs(z[p]), j, 0, p, 1});
        tmin = std::min(tmin, ratio);
      }
    }
    for (Index r = 0; r < m; ++r) {
      if (rowpos[static_cast<std::size_t>(r)] >= 0) continue;
      const Scalar w = dir * gs[r];
      if (w > pivot_tol) {
        const Scalar ratio = std::max(Scalar(0), s[r] / w);
        cands.push_back({ratio, std::abs(gs[r]), n + r, 1, r, 0});
        tmin = std::min(tmin, ratio);
      }
    }

    auto apply_step = [&](Scalar t) {
      if (t == 0) return;
      for (Index p = 0; p < k; ++p) x[Bx[static_cast<std::size_t>(p)]] -= dir * t * z[p];
      for (Index r = 0; r < m; ++r)
        if (rowpos[static_cast<std::size_t>(r)] < 0) s[r] -= dir * t * gs[r];
      if (ent_structural)
        x[ent_idx] += dir * t;
      else
        s[ent_idx] += dir * t;
    };

    // A bound flip needs no basis change and is preferred on ties.
    const Scalar tflip = ent_structural ? lp.upper[ent_idx] : kInf;
    if (tflip <= tmin) {
      apply_step(tflip);
      x[ent_idx] = dir > 0 ? lp.upper[ent_idx] : 0;
      xstate[static_cast<std::size_t>(ent_idx)] = dir > 0 ? 1 : 0;
      ++res.iterations;
      confirmed = false;
      degen_streak = 0;
      if (bland) bland = false;
      continue;
    }
    if (tmin == kInf) throw std::runtime_error("LP is unbounded");

    // Leaving selection among exact minimum-ratio ties: largest pivot
    // magnitude, then lowest variable index (plain lowest index under Bland).
    int best = -1;
    for (int ci = 0; ci < static_cast<int>(cands.size()); ++ci) {
      const auto& cd = cands[static_cast<std::size_t>(ci)];
      if (cd.ratio > tmin) continue;
      if (best < 0) {
        best = ci;
        continue;
      }
      const auto& bc = cands[static_cast<std::size_t>(best)];
      if (bland) {
        if (cd.gvar < bc.gvar) best = ci;
      } else if (cd.mag > bc.mag || (cd.mag == bc.mag && cd.gvar < bc.gvar)) {
        best = ci;
      }
    }
    if (cands[static_cast<std::size_t>(best)].mag < weak_pivot && pivots_since_refactor > 0) {
      // Suspiciously small pivot: rebuild the factorization and re-derive the
      // step from fresh numbers instead of compounding drift.
      refactor();
      pivots_since_refactor = 0;
      confirmed = false;
      continue;
    }

    apply_step(tmin);
    if (tmin > degen_tol) {
      degen_streak = 0;
      bland = false;
    } else if (++degen_streak >= opt.stall_limit && !bland) {
      bland = true;
      res.bland_engaged = true;
    }

    const Cand lv = cands[static_cast<std::size_t>(best)];
    if (lv.kind == 0) {
      const Index p = lv.payload;
      const Index jout = Bx[static_cast<std::size_t>(p)];
      x[jout] = lv.hits_upper ? lp.upper[jout] : 0;
      xstate[static_cast<std::size_t>(jout)] = lv.hits_upper ? 1 : 0;
      if (ent_structural) {
        // Column replace at position p; Gauss-Jordan on the eta column z.
        const Scalar piv = z[p];
        Winv.row(p) /= piv;
        for (Index i = 0; i < k; ++i)
          if (i != p) Winv.row(i) -= z[i] * Winv.row(p);
        colpos[static_cast<std::size_t>(jout)] = -1;
        Bx[static_cast<std::size_t>(p)] = ent_idx;
        colpos[static_cast<std::size_t>(ent_idx)] = p;
        xstate[static_cast<std::size_t>(ent_idx)] = 2;
      } else {
        // Shrink: row ent_idx and column p leave the working block. With
        // V = W^-1 the surviving block's inverse is V* - V.col(rho)
        // V.row(p) / V(p, rho), then row p / column rho are dropped.
        const Index rho = rowpos[static_cast<std::size_t>(ent_idx)];
        const Scalar piv = Winv(p, rho);
        Vector colv = Winv.col(rho);
        RowVec rowv = Winv.row(p);
        Winv -= colv * (rowv / piv);
        Matrix nw(k - 1, k - 1);
        nw.topLeftCorner(p, rho) = Winv.topLeftCorner(p, rho);
        nw.topRightCorner(p, k - 1 - rho) = Winv.topRightCorner(p, k - 1 - rho);
        nw.bottomLeftCorner(k - 1 - p, rho) = Winv.bottomLeftCorner(k - 1 - p, rho);
        nw.bottomRightCorner(k - 1 - p, k - 1 - rho) =
            Winv.bottomRightCorner(k - 1 - p, k - 1 - rho);
        Winv = std::move(nw);
        colpos[static_cast<std::size_t>(jout)] = -1;
        Bx.erase(Bx.begin() + p);
        for (Index q = p; q < static_cast<Index>(Bx.size()); ++q)
          colpos[static_cast<std::size_t>(Bx[static_cast<std::size_t>(q)])] = q;
        rowpos[static_cast<std::size_t>(ent_idx)] = -1;
        R.erase(R.begin() + rho);
        for (Index q = rho; q < static_cast<Index>(R.size()); ++q)
          rowpos[static_cast<std::size_t>(R[static_cast<std::size_t>(q)])] = q;
      }
    } else {
      const Index rnew = lv.payload;
      s[rnew] = 0;
      Vector rowvec = Vector::Zero(k);
      for (const auto& [j, a] : lp.rows[static_cast<std::size_t>(rnew)])
        if (colpos[static_cast<std::size_t>(j)] >= 0) rowvec[colpos[static_cast<std::size_t>(j)]] = a;
      if (ent_structural) {
        // Grow by row rnew and column ent_idx; Schur pivot S = -gs[rnew].
        const Scalar schur = -gs[rnew];
        RowVec h = rowvec.transpose() * Winv;
        Matrix nw(k + 1, k + 1);
        nw.topLeftCorner(k, k) = Winv + z * (h / schur);
        nw.topRightCorner(k, 1) = -z / schur;
        nw.bottomLeftCorner(1, k) = -h / schur;
        nw(k, k) = 1 / schur;
        Winv = std::move(nw);
        R.push_back(rnew);
        rowpos[static_cast<std::size_t>(rnew)] = k;
        Bx.push_back(ent_idx);
        colpos[static_cast<std::size_t>(ent_idx)] = k;
        xstate[static_cast<std::size_t>(ent_idx)] = 2;
      } else {
        // Row replace: rnew supplants ent_idx in the tight set. With
        // h = A[rnew, Bx] W^-1 the pivot is h[rho] (= -gs[rnew]).
        const Index rho = rowpos[static_cast<std::size_t>(ent_idx)];
        RowVec h = rowvec.transpose() * Winv;
        const Scalar piv = h[rho];
        Vector newcol = Winv.col(rho) / piv;
        for (Index jc = 0; jc < k; ++jc)
          if (jc != rho) Winv.col(jc) -= h[jc] * newcol;
        Winv.col(rho) = newcol;
        rowpos[static_cast<std::size_t>(ent_idx)] = -1;
        R[static_cast<std::size_t>(rho)] = rnew;
        rowpos[static_cast<std::size_t>(rnew)] = rho;
      }
    }

    ++res.iterations;
    confirmed = false;
    if (++pivots_since_refactor >= opt.refactor_every) {
      refactor();
      pivots_since_refactor = 0;
    }
  }

  // Snap solver drift onto the box; anything beyond tolerance is a bug.
  for (Index j = 0; j < n; ++j) {
    const Scalar span = std::max(Scalar(1), lp.upper[j]);
    if (x[j] < 0) {
      if (x[j] < -1e-7 * span) throw std::runtime_error("solution escaped its lower bound");
      x[j] = 0;
    } else if (x[j] > lp.upper[j]) {
      if (x[j] > lp.upper[j] + 1e-7 * span)
        throw std::runtime_error("solution escaped its upper bound");
      x[j] = lp.upper[j];
    }
  }

  res.x = std::move(x);
  res.objective = lp.cost.dot(res.x);
  return res;
}

}  // namespace ian
