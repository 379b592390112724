// Bounded-variable primal simplex over a sparse standard form.
//
// Every row a.x {<=,=,>=} b becomes a.x + s = b with a sign-restricted logical
// s, so the all-logical basis is an identity start. The basis is kept as a
// sparse LU factorization (singleton-first elimination with a Markowitz
// residual) plus a product-form eta file, rebuilt periodically. Phase 1 runs
// the composite infeasibility objective; Bland's rule is the anti-cycling
// fallback after a stall.

#include "simplex_internal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace secopt::milp {

namespace internal {

namespace {

struct SparseCol {
  std::vector<int> idx;
  std::vector<double> val;
};

enum VStat : std::uint8_t { kBasic, kAtLower, kAtUpper, kFreeNB };

constexpr double kDrop = 1e-12;

class Basis {
 public:
  // cols[p] = basis column at position p (row-indexed sparse vector).
  // Returns false if the matrix was deficient; deficient_rows() lists rows
  // that received no structural pivot.
  bool factor(const std::vector<SparseCol>& cols) {
    m_ = static_cast<int>(cols.size());
    etas_.clear();
    lops_.clear();
    urows_.assign(m_, {});
    ucols_.assign(m_, {});
    pivot_row_.assign(m_, -1);
    pivot_col_.assign(m_, -1);
    deficient_.clear();
    nsteps_ = 0;

    std::vector<std::vector<std::pair<int, double>>> rows(m_);
    std::vector<std::vector<int>> col_rows(m_);
    std::vector<int> row_cnt(m_, 0), col_cnt(m_, 0);
    std::vector<char> row_done(m_, 0), col_done(m_, 0);
    for (int p = 0; p < m_; ++p) {
      for (std::size_t k = 0; k < cols[p].idx.size(); ++k) {
        int r = cols[p].idx[k];
        double v = cols[p].val[k];
        if (std::abs(v) <= kDrop) continue;
        rows[r].emplace_back(p, v);
        col_rows[p].push_back(r);
        ++row_cnt[r];
        ++col_cnt[p];
      }
    }
    for (int r = 0; r < m_; ++r) std::sort(rows[r].begin(), rows[r].end());

    auto value_in_row = [&](int r, int c) -> double {
      auto it = std::lower_bound(rows[r].begin(), rows[r].end(),
                                 std::make_pair(c, -kInf));
      if (it != rows[r].end() && it->first == c) return it->second;
      return 0.0;
    };
    auto erase_in_row = [&](int r, int c) {
      auto it = std::lower_bound(rows[r].begin(), rows[r].end(),
                                 std::make_pair(c, -kInf));
      if (it != rows[r].end() && it->first == c) rows[r].erase(it);
    };
    auto record_pivot = [&](int r, int c, double piv) {
      pivot_row_[nsteps_] = r;
      pivot_col_[nsteps_] = c;
      std::vector<std::pair<int, double>> prow;
      for (auto& [cc, vv] : rows[r])
        if (!col_done[cc] && std::abs(vv) > kDrop) prow.emplace_back(cc, vv);
      urows_[nsteps_] = std::move(prow);
      row_done[r] = 1;
      col_done[c] = 1;
      for (auto& [cc, vv] : urows_[nsteps_])
        if (cc != c) --col_cnt[cc];
      ++nsteps_;
      (void)piv;
    };

    int remaining = m_;
    while (remaining > 0) {
      bool progress = true;
      while (progress) {
        progress = false;
        // Column singletons: pivot with no elimination work at all.
        for (int c = 0; c < m_; ++c) {
          if (col_done[c] || col_cnt[c] != 1) continue;
          int prow = -1;
          double pval = 0.0;
          for (int r : col_rows[c]) {
            if (row_done[r]) continue;
            double v = value_in_row(r, c);
            if (std::abs(v) > kDrop) {
              prow = r;
              pval = v;
              break;
            }
          }
          if (prow < 0) {
            col_cnt[c] = 0;
            continue;
          }
          record_pivot(prow, c, pval);
          --remaining;
          progress = true;
        }
        // Row singletons: eliminating the pivot column just deletes entries.
        for (int r = 0; r < m_; ++r) {
          if (row_done[r] || row_cnt[r] != 1) continue;
          int pcol = -1;
          double pval = 0.0;
          for (auto& [c, v] : rows[r]) {
            if (!col_done[c] && std::abs(v) > kDrop) {
              pcol = c;
              pval = v;
              break;
            }
          }
          if (pcol < 0) {
            row_cnt[r] = 0;
            continue;
          }
          if (std::abs(pval) < 1e-10) continue;  // leave for Markowitz
          for (int r2 : col_rows[pcol]) {
            if (row_done[r2] || r2 == r) continue;
            double v2 = value_in_row(r2, pcol);
            if (std::abs(v2) <= kDrop) continue;
            lops_.push_back({r2, r, v2 / pval});
            erase_in_row(r2, pcol);
            --row_cnt[r2];
            --col_cnt[pcol];
          }
          record_pivot(r, pcol, pval);
          --remaining;
          progress = true;
        }
      }
      if (remaining == 0) break;

      // Markowitz pivot on the residual.
      std::vector<double> col_max(m_, 0.0);
      for (int r = 0; r < m_; ++r) {
        if (row_done[r]) continue;
        for (auto& [c, v] : rows[r])
          if (!col_done[c]) col_max[c] = std::max(col_max[c], std::abs(v));
      }
      int best_r = -1, best_c = -1;
      long best_score = 0;
      double best_mag = 0.0;
      for (int r = 0; r < m_; ++r) {
        if (row_done[r]) continue;
        for (auto& [c, v] : rows[r]) {
          if (col_done[c]) continue;
          double a = std::abs(v);
          if (a <= kDrop || a < 0.05 * col_max[c]) continue;
          long score = static_cast<long>(row_cnt[r] - 1) * (col_cnt[c] - 1);
          if (best_r < 0 || score < best_score ||
              (score == best_score && a > best_mag)) {
            best_r = r;
            best_c = c;
            best_score = score;
            best_mag = a;
          }
        }
      }
      if (best_r < 0) {
        for (int r = 0; r < m_; ++r)
          if (!row_done[r]) {
            deficient_.push_back(r);
            row_done[r] = 1;
          }
        break;
      }
      double piv = value_in_row(best_r, best_c);
      // Eliminate pivot column from all other active rows.
      std::vector<std::pair<int, double>> prow;
      for (auto& [c, v] : rows[best_r])
        if (!col_done[c] && std::abs(v) > kDrop) prow.emplace_back(c, v);
      for (int r2 : col_rows[best_c]) {
        if (row_done[r2] || r2 == best_r) continue;
        double v2 = value_in_row(r2, best_c);
        if (std::abs(v2) <= kDrop) continue;
        double f = v2 / piv;
        lops_.push_back({r2, best_r, f});
        std::vector<std::pair<int, double>> merged;
        merged.reserve(rows[r2].size() + prow.size());
        auto it1 = rows[r2].begin();
        auto it2 = prow.begin();
        while (it1 != rows[r2].end() || it2 != prow.end()) {
          if (it2 == prow.end() ||
              (it1 != rows[r2].end() && it1->first < it2->first)) {
            merged.push_back(*it1++);
          } else if (it1 == rows[r2].end() || it2->first < it1->first) {
            double nv = -f * it2->second;
            if (std::abs(nv) > kDrop && !col_done[it2->first]) {
              merged.emplace_back(it2->first, nv);
              col_rows[it2->first].push_back(r2);  // fill-in
            }
            ++it2;
          } else {
            double nv = it1->second - f * it2->second;
            if (it1->first == best_c) nv = 0.0;
            if (std::abs(nv) > kDrop || col_done[it1->first])
              merged.emplace_back(it1->first, nv);
            ++it1;
            ++it2;
          }
        }
        rows[r2] = std::move(merged);
      }
      record_pivot(best_r, best_c, piv);
      --remaining;
      // Recount residual activity (residual is small after singleton passes).
      for (int r = 0; r < m_; ++r) {
        if (row_done[r]) continue;
        int n = 0;
        for (auto& [c, v] : rows[r])
          if (!col_done[c] && std::abs(v) > kDrop) ++n;
        row_cnt[r] = n;
      }
      std::fill(col_cnt.begin(), col_cnt.end(), 0);
      for (int r = 0; r < m_; ++r) {
        if (row_done[r]) continue;
        for (auto& [c, v] : rows[r])
          if (!col_done[c] && std::abs(v) > kDrop) ++col_cnt[c];
      }
    }

    // Column access for btran.
    for (int s = 0; s < nsteps_; ++s)
      for (auto& [c, v] : urows_[s]) ucols_[c].emplace_back(s, v);
    step_of_col_.assign(m_, -1);
    for (int s = 0; s < nsteps_; ++s) step_of_col_[pivot_col_[s]] = s;
    return deficient_.empty();
  }

  const std::vector<int>& deficient_rows() const { return deficient_; }

  // x = B^{-1} b, b row-indexed in, position-indexed out.
  void ftran(std::vector<double>& b) const {
    for (const auto& op : lops_) b[op.target] -= op.f * b[op.pivot_row];
    work_.assign(m_, 0.0);
    for (int s = nsteps_ - 1; s >= 0; --s) {
      int pr = pivot_row_[s];
      int pc = pivot_col_[s];
      double acc = b[pr];
      double piv = 0.0;
      for (const auto& [c, v] : urows_[s]) {
        if (c == pc) {
          piv = v;
          continue;
        }
        acc -= v * work_[c];
      }
      work_[pc] = acc / piv;
    }
    b = work_;
    for (const auto& e : etas_) {
      double nr = b[e.r] / e.wr;
      for (std::size_t k = 0; k < e.idx.size(); ++k) {
        int i = e.idx[k];
        if (i != e.r) b[i] -= e.val[k] * nr;
      }
      b[e.r] = nr;
    }
  }

  // y = B^{-T} c, position-indexed in, row-indexed out.
  void btran(std::vector<double>& c) const {
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      const auto& e = *it;
      double acc = c[e.r];
      for (std::size_t k = 0; k < e.idx.size(); ++k) {
        int i = e.idx[k];
        if (i != e.r) acc -= e.val[k] * c[i];
      }
      c[e.r] = acc / e.wr;
    }
    work_.assign(m_, 0.0);
    for (int s = 0; s < nsteps_; ++s) {
      int pr = pivot_row_[s];
      int pc = pivot_col_[s];
      double acc = c[pc];
      double piv = 0.0;
      for (const auto& [st, v] : ucols_[pc]) {
        if (st == s) {
          piv = v;
          continue;
        }
        if (st < s) acc -= v * work_[pivot_row_[st]];
      }
      work_[pr] = acc / piv;
    }
    c = work_;
    for (auto it = lops_.rbegin(); it != lops_.rend(); ++it)
      c[it->pivot_row] -= it->f * c[it->target];
  }

  void push_eta(int pos, const std::vector<double>& w) {
    Eta e;
    e.r = pos;
    e.wr = w[pos];
    for (int i = 0; i < m_; ++i)
      if (std::abs(w[i]) > kDrop) {
        e.idx.push_back(i);
        e.val.push_back(w[i]);
      }
    etas_.push_back(std::move(e));
  }

  int eta_count() const { return static_cast<int>(etas_.size()); }

 private:
  struct LOp {
    int target;
    int pivot_row;
    double f;
  };
  struct Eta {
    int r = 0;
    double wr = 1.0;
    std::vector<int> idx;
    std::vector<double> val;
  };

  int m_ = 0;
  int nsteps_ = 0;
  std::vector<LOp> lops_;
  std::vector<std::vector<std::pair<int, double>>> urows_;  // step -> (col,val)
  std::vector<std::vector<std::pair<int, double>>> ucols_;  // col -> (step,val)
  std::vector<int> pivot_row_, pivot_col_, step_of_col_;
  std::vector<Eta> etas_;
  std::vector<int> deficient_;
  mutable std::vector<double> work_;
};

}  // namespace

class SimplexImpl {
 public:
  SimplexImpl(const MilpModel& model, const SolverOptions& opts)
      : model_(model), opts_(opts) {
    build();
  }

  MilpSolution solve(const std::vector<double>* lb_struct,
                     const std::vector<double>* ub_struct) {
    for (int j = 0; j < n_; ++j) {
      lb_[j] = lb_struct ? (*lb_struct)[j] : model_.var(j).lb;
      ub_[j] = ub_struct ? (*ub_struct)[j] : model_.var(j).ub;
    }
    return run();
  }

 private:
  const MilpModel& model_;
  SolverOptions opts_;

  int n_ = 0, m_ = 0, total_ = 0;
  std::vector<SparseCol> acols_;
  std::vector<double> rhs_, row_scale_;
  std::vector<double> lb_, ub_, cost_;

  std::vector<int> basic_;
  std::vector<std::uint8_t> vstat_;
  std::vector<double> xb_;
  std::vector<double> xn_;
  Basis basis_;

  void build() {
    n_ = model_.num_vars();
    m_ = model_.num_rows();
    total_ = n_ + m_;
    acols_.assign(total_, {});
    rhs_.assign(m_, 0.0);
    row_scale_.assign(m_, 1.0);
    lb_.assign(total_, 0.0);
    ub_.assign(total_, 0.0);
    cost_.assign(total_, 0.0);

    for (int i = 0; i < m_; ++i) {
      const Row& r = model_.row(i);
      double mx = 0.0;
      for (const auto& [v, c] : r.coeffs) mx = std::max(mx, std::abs(c));
      row_scale_[i] = (mx > 0.0) ? 1.0 / mx : 1.0;
      rhs_[i] = r.rhs * row_scale_[i];
    }
    for (int i = 0; i < m_; ++i) {
      const Row& r = model_.row(i);
      for (const auto& [v, c] : r.coeffs) {
        acols_[v].idx.push_back(i);
        acols_[v].val.push_back(c * row_scale_[i]);
      }
    }
    for (int i = 0; i < m_; ++i) {
      acols_[n_ + i].idx.push_back(i);
      acols_[n_ + i].val.push_back(1.0);
      const Row& r = model_.row(i);
      if (r.sense == Sense::LE) {
        lb_[n_ + i] = 0.0;
        ub_[n_ + i] = kInf;
      } else if (r.sense == Sense::GE) {
        lb_[n_ + i] = -kInf;
        ub_[n_ + i] = 0.0;
      } else {
        lb_[n_ + i] = 0.0;
        ub_[n_ + i] = 0.0;
      }
    }
    for (int j = 0; j < n_; ++j) cost_[j] = model_.objective()[j];
  }

  double bound_tol(double b) const {
    return opts_.feasibility_tol * std::max(1.0, std::isfinite(b) ? std::abs(b) : 1.0);
  }

  void set_initial_point() {
    vstat_.assign(total_, kAtLower);
    basic_.resize(m_);
    for (int j = 0; j < total_; ++j) {
      if (std::isfinite(lb_[j])) vstat_[j] = kAtLower;
      else if (std::isfinite(ub_[j])) vstat_[j] = kAtUpper;
      else vstat_[j] = kFreeNB;
    }
    for (int i = 0; i < m_; ++i) {
      basic_[i] = n_ + i;
      vstat_[n_ + i] = kBasic;
    }
    xn_.assign(total_, 0.0);
    for (int j = 0; j < total_; ++j) {
      if (vstat_[j] == kAtLower) xn_[j] = lb_[j];
      else if (vstat_[j] == kAtUpper) xn_[j] = ub_[j];
    }
  }

  void refactor() {
    std::vector<SparseCol> cols(m_);
    for (int i = 0; i < m_; ++i) cols[i] = acols_[basic_[i]];
    if (!basis_.factor(cols)) {
      for (int r : basis_.deficient_rows()) {
        int logical = n_ + r;
        if (vstat_[logical] == kBasic) continue;
        int displaced = basic_[r];
        vstat_[displaced] = std::isfinite(lb_[displaced]) ? kAtLower
                            : std::isfinite(ub_[displaced]) ? kAtUpper
                                                            : kFreeNB;
        xn_[displaced] = (vstat_[displaced] == kAtLower)   ? lb_[displaced]
                         : (vstat_[displaced] == kAtUpper) ? ub_[displaced]
                                                           : 0.0;
        basic_[r] = logical;
        vstat_[logical] = kBasic;
      }
      std::vector<SparseCol> cols2(m_);
      for (int i = 0; i < m_; ++i) cols2[i] = acols_[basic_[i]];
      basis_.factor(cols2);
    }
    compute_xb();
  }

  void compute_xb() {
    std::vector<double> b = rhs_;
    for (int j = 0; j < total_; ++j) {
      if (vstat_[j] == kBasic || xn_[j] == 0.0) continue;
      const SparseCol& col = acols_[j];
      for (std::size_t k = 0; k < col.idx.size(); ++k)
        b[col.idx[k]] -= col.val[k] * xn_[j];
    }
    basis_.ftran(b);
    xb_ = b;
  }

  double infeasibility() const {
    double s = 0.0;
    for (int i = 0; i < m_; ++i) {
      int j = basic_[i];
      if (xb_[i] < lb_[j]) s += lb_[j] - xb_[i];
      else if (xb_[i] > ub_[j]) s += xb_[i] - ub_[j];
    }
    return s;
  }

  double current_objective() const {
    double z = 0.0;
    for (int j = 0; j < total_; ++j)
      if (vstat_[j] != kBasic) z += cost_[j] * xn_[j];
    for (int i = 0; i < m_; ++i) z += cost_[basic_[i]] * xb_[i];
    return z;
  }

  MilpSolution run() {
    MilpSolution sol;
    set_initial_point();
    refactor();

    long iter = 0;
    long stall = 0;
    bool bland = false;
    bool was_phase1 = true;
    double last_merit = kInf;
    std::vector<double> y(m_), w(m_);

    while (true) {
      if (iter >= opts_.iteration_limit) {
        sol.status = SolveStatus::IterationLimit;
        return finish(sol, iter);
      }

      bool phase1 = false;
      for (int i = 0; i < m_; ++i) {
        int j = basic_[i];
        if (xb_[i] < lb_[j] - bound_tol(lb_[j]) ||
            xb_[i] > ub_[j] + bound_tol(ub_[j])) {
          phase1 = true;
          break;
        }
      }
      if (phase1 != was_phase1) {
        last_merit = kInf;
        stall = 0;
        bland = false;
        was_phase1 = phase1;
      }

      std::fill(y.begin(), y.end(), 0.0);
      if (phase1) {
        for (int i = 0; i < m_; ++i) {
          int j = basic_[i];
          if (xb_[i] < lb_[j] - bound_tol(lb_[j])) y[i] = -1.0;
          else if (xb_[i] > ub_[j] + bound_tol(ub_[j])) y[i] = 1.0;
        }
      } else {
        for (int i = 0; i < m_; ++i) y[i] = cost_[basic_[i]];
      }
      basis_.btran(y);

      int q = -1, dir = 0;
      double best = 0.0;
      const double dtol = 1e-9;
      for (int j = 0; j < total_; ++j) {
        if (vstat_[j] == kBasic) continue;
        if (lb_[j] == ub_[j] && std::isfinite(lb_[j])) continue;
        double dj = phase1 ? 0.0 : cost_[j];
        const SparseCol& col = acols_[j];
        for (std::size_t k = 0; k < col.idx.size(); ++k)
          dj -= y[col.idx[k]] * col.val[k];
        int d = 0;
        if (vstat_[j] == kAtLower && dj < -dtol) d = +1;
        else if (vstat_[j] == kAtUpper && dj > dtol) d = -1;
        else if (vstat_[j] == kFreeNB && std::abs(dj) > dtol) d = (dj < 0) ? +1 : -1;
        if (d == 0) continue;
        if (bland) {
          q = j;
          dir = d;
          break;
        }
        if (std::abs(dj) > best * (1.0 + 1e-12) ) {
          best = std::abs(dj);
          q = j;
          dir = d;
        }
      }

      if (q < 0) {
        if (phase1) {
          sol.status = SolveStatus::Infeasible;
          return finish(sol, iter);
        }
        sol.status = SolveStatus::Optimal;
        std::vector<double> yd(m_);
        for (int i = 0; i < m_; ++i) yd[i] = cost_[basic_[i]];
        basis_.btran(yd);
        sol.duals.assign(m_, 0.0);
        for (int i = 0; i < m_; ++i) sol.duals[i] = yd[i] * row_scale_[i];
        sol.reduced_costs.assign(n_, 0.0);
        for (int j = 0; j < n_; ++j) {
          if (vstat_[j] == kBasic) continue;
          double dj = cost_[j];
          const SparseCol& col = acols_[j];
          for (std::size_t k = 0; k < col.idx.size(); ++k)
            dj -= yd[col.idx[k]] * col.val[k];
          sol.reduced_costs[j] = dj;
        }
        return finish(sol, iter);
      }

      std::fill(w.begin(), w.end(), 0.0);
      {
        const SparseCol& col = acols_[q];
        for (std::size_t k = 0; k < col.idx.size(); ++k) w[col.idx[k]] = col.val[k];
        basis_.ftran(w);
      }

      // Ratio test: entering moves by t*dir >= 0, basic i changes at rate
      // delta_i = -dir*w[i]. Blocking bound is the first breakpoint of the
      // composite objective in the movement direction.
      double tmax = kInf;
      int leave_pos = -1, leave_to = 0;
      double leave_mag = 0.0;
      const double piv_tol = 1e-8;
      for (int i = 0; i < m_; ++i) {
        if (std::abs(w[i]) <= piv_tol) continue;
        int j = basic_[i];
        double delta = -dir * w[i];
        double t = kInf;
        int to = 0;
        if (delta > 0) {
          if (xb_[i] < lb_[j] - bound_tol(lb_[j])) {
            t = (lb_[j] - xb_[i]) / delta;
            to = 0;
          } else if (xb_[i] <= ub_[j] + bound_tol(ub_[j])) {
            if (!std::isfinite(ub_[j])) continue;
            t = (ub_[j] - xb_[i]) / delta;
            to = 1;
          } else {
            continue;  // already above upper, moving further up: no breakpoint
          }
        } else {
          if (xb_[i] > ub_[j] + bound_tol(ub_[j])) {
            t = (ub_[j] - xb_[i]) / delta;
            to = 1;
          } else if (xb_[i] >= lb_[j] - bound_tol(lb_[j])) {
            if (!std::isfinite(lb_[j])) continue;
            t = (lb_[j] - xb_[i]) / delta;
            to = 0;
          } else {
            continue;
          }
        }
        if (t < 0) t = 0;
        if (t < tmax - 1e-12 || (t < tmax + 1e-12 && std::abs(w[i]) > leave_mag)) {
          tmax = t;
          leave_pos = i;
          leave_mag = std::abs(w[i]);
          leave_to = to;
        }
      }
      double span = ub_[q] - lb_[q];
      bool bound_flip = false;
      if (std::isfinite(span) && span < tmax) {
        tmax = span;
        bound_flip = true;
      }

      if (!std::isfinite(tmax)) {
        sol.status = phase1 ? SolveStatus::Infeasible : SolveStatus::Unbounded;
        return finish(sol, iter);
      }

      if (tmax != 0.0)
        for (int i = 0; i < m_; ++i)
          if (w[i] != 0.0) xb_[i] -= tmax * dir * w[i];
      double enter_val = xn_[q] + tmax * dir;

      if (bound_flip) {
        vstat_[q] = (dir > 0) ? kAtUpper : kAtLower;
        xn_[q] = (dir > 0) ? ub_[q] : lb_[q];
      } else {
        int lv = basic_[leave_pos];
        vstat_[lv] = (leave_to == 0) ? kAtLower : kAtUpper;
        xn_[lv] = (leave_to == 0) ? lb_[lv] : ub_[lv];
        basic_[leave_pos] = q;
        vstat_[q] = kBasic;
        xb_[leave_pos] = enter_val;
        xn_[q] = enter_val;
        if (basis_.eta_count() >= 64 || std::abs(w[leave_pos]) < 1e-9) {
          refactor();
        } else {
          basis_.push_eta(leave_pos, w);
        }
      }

      ++iter;
      double merit = phase1 ? infeasibility() : current_objective();
      if (merit < last_merit - 1e-10 * std::max(1.0, std::abs(last_merit))) {
        stall = 0;
        bland = false;
        last_merit = merit;
      } else if (++stall > 300) {
        bland = true;
      }
      if ((iter % 2048) == 0) refactor();
    }
  }

  MilpSolution finish(MilpSolution sol, long iter) {
    sol.stats.simplex_iterations = iter;
    sol.stats.lp_solves = 1;
    if (sol.status == SolveStatus::Optimal) {
      sol.values.assign(n_, 0.0);
      for (int j = 0; j < n_; ++j) sol.values[j] = xn_[j];
      for (int i = 0; i < m_; ++i)
        if (basic_[i] < n_) sol.values[basic_[i]] = xb_[i];
      for (int j = 0; j < n_; ++j) {
        double v = sol.values[j];
        if (v < lb_[j]) v = lb_[j];
        if (v > ub_[j]) v = ub_[j];
        sol.values[j] = v;
      }
      sol.objective = model_.eval_objective(sol.values);
    }
    return sol;
  }
};

LpEngine::LpEngine(const MilpModel& model, const SolverOptions& opts)
    : impl_(std::make_unique<SimplexImpl>(model, opts)) {}
LpEngine::~LpEngine() = default;

MilpSolution LpEngine::solve() { return impl_->solve(nullptr, nullptr); }
MilpSolution LpEngine::solve(const std::vector<double>& lb,
                             const std::vector<double>& ub) {
  return impl_->solve(&lb, &ub);
}

}  // namespace internal

MilpSolution solve_lp(const MilpModel& model, const SolverOptions& opts) {
  model.check_well_formed();
  internal::LpEngine engine(model, opts);
  return engine.solve();
}

}  // namespace secopt::milp
