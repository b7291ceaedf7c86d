#include "simplex_internal.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

namespace pirbound::simplex {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kRatioTieTol = 1e-11;
constexpr double kCleanupTol = 5e-10;

// Deterministic row perturbation in (0.5, 1.5), used to break the heavy
// degeneracy of entropy LPs (their right-hand sides are almost all zero).
double row_noise(int row) {
  const std::uint32_t mixed = (1103515245u * static_cast<std::uint32_t>(row + 1) + 12345u) &
                              0x7fffffffu;
  return 0.5 + static_cast<double>(mixed) / 2147483648.0;
}

class Kernel {
 public:
  Kernel(const Problem& p, const Options& opts) : p_(p), opts_(opts), m_(p.rows) {
    rhs_true_.resize(m_);
    rhs_pert_.resize(m_);
    double max_abs = 1.0;
    for (int r = 0; r < m_; ++r)
      max_abs = std::max(max_abs, std::abs(p_.rhs[static_cast<std::size_t>(r)]));
    const double scale = 1e-4 * max_abs;
    for (int r = 0; r < m_; ++r) {
      rhs_true_(r) = p_.rhs[static_cast<std::size_t>(r)];
      rhs_pert_(r) = rhs_true_(r) + scale * row_noise(r);
    }
    perturbed_ = true;

    in_basis_.assign(p_.cols.size() + static_cast<std::size_t>(m_), false);
    basis_.assign(static_cast<std::size_t>(m_), -1);
    for (int r = 0; r < m_; ++r) {
      int col = p_.initial_basis[static_cast<std::size_t>(r)];
      if (col < 0) {
        col = artificial_id(r);
        has_artificials_ = true;
      }
      basis_[static_cast<std::size_t>(r)] = col;
      in_basis_[static_cast<std::size_t>(col)] = true;
    }
    refactor();
  }

  Outcome run(bool phase_one) {
    phase_one_ = phase_one;
    devex_reset();
    rebuild_pricing();
    long stall = 0;
    double last_objective = objective();
    while (true) {
      if (iterations_ >= opts_.max_iterations) return Outcome::IterationLimit;
      const int entering = price();
      if (entering < 0) {
        // the cached reduced costs carry roundoff; confirm optimality on
        // freshly computed ones before declaring victory
        rebuild_pricing();
        if (price() < 0) return Outcome::Optimal;
        continue;
      }
      const Eigen::VectorXd d = ftran(column_dense(entering));
      // exact reduced cost of the entering column comes free from d
      double rc_entering = cost(entering, phase_one_);
      for (int r = 0; r < m_; ++r)
        rc_entering -= cost(basis_[static_cast<std::size_t>(r)], phase_one_) * d(r);
      if (rc_entering >= -0.5 * opts_.optimality_tol) {
        rc_[static_cast<std::size_t>(entering)] = rc_entering;  // stale cache; retry
        continue;
      }
      const int leaving_row = ratio_test(d);
      if (leaving_row < 0) return Outcome::Unbounded;
      update_pricing(entering, leaving_row, d, rc_entering);
      pivot(entering, leaving_row, d);
      ++iterations_;
      const double obj = objective();
      if (obj < last_objective - 1e-12 * (1.0 + std::abs(last_objective))) {
        last_objective = obj;
        stall = 0;
        bland_ = false;
      } else if (++stall > 2 * m_ + 200) {
        if (!bland_) {
          bland_ = true;  // anti-cycling fallback until the next improvement
          rebuild_pricing();
        }
      }
      if (opts_.trace && iterations_ % 1000 == 0)
        std::fprintf(stderr, "iter %ld phase%d obj %.9f stall %ld bland %d\n", iterations_,
                     phase_one_ ? 1 : 2, obj, stall, bland_ ? 1 : 0);
      if (static_cast<int>(etas_.size()) >= opts_.refactor_interval) {
        refactor();
        rebuild_pricing();
      }
    }
  }

  // Removes the perturbation and restores primal feasibility with dual
  // simplex steps (reduced costs stay nonnegative, so the final basis remains
  // optimal for the true right-hand side). Returns false when the true
  // system turns out infeasible.
  bool unperturb_and_cleanup() {
    perturbed_ = false;
    refactor();
    long steps = 0;
    while (true) {
      if (iterations_ + steps >= opts_.max_iterations)
        throw std::runtime_error("iteration limit during cleanup");
      int row = -1;
      double most_negative = -kCleanupTol;
      for (int r = 0; r < m_; ++r) {
        if (xB_(r) < most_negative) {
          most_negative = xB_(r);
          row = r;
        }
      }
      if (row < 0) {
        iterations_ += steps;
        return true;
      }
      Eigen::VectorXd unit = Eigen::VectorXd::Zero(m_);
      unit(row) = 1.0;
      const Eigen::VectorXd u = btran(unit);

      // entering column: dual ratio test over columns with a negative entry
      // in the leaving row
      const Eigen::VectorXd pi = multipliers(false);
      int entering = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < p_.cols.size(); ++j) {
        if (in_basis_[j]) continue;
        double alpha = 0.0;
        for (const auto& [r, val] : p_.cols[j].entries) alpha += u(r) * val;
        if (alpha >= -kPivotTol) continue;
        double rc = p_.cols[j].cost;
        for (const auto& [r, val] : p_.cols[j].entries) rc -= pi(r) * val;
        const double ratio = std::max(rc, 0.0) / -alpha;
        if (ratio < best_ratio - kRatioTieTol ||
            (ratio <= best_ratio + kRatioTieTol && entering >= 0 &&
             static_cast<int>(j) < entering)) {
          best_ratio = ratio;
          entering = static_cast<int>(j);
        }
      }
      if (entering < 0) return false;  // cannot repair: infeasible

      const Eigen::VectorXd d = ftran(column_dense(entering));
      dual_pivot(entering, row, d);
      ++steps;
      if (static_cast<int>(etas_.size()) >= opts_.refactor_interval) refactor();
    }
  }

  void evict_artificials() {
    for (int r = 0; r < m_; ++r) {
      if (!is_artificial(basis_[static_cast<std::size_t>(r)])) continue;
      Eigen::VectorXd unit = Eigen::VectorXd::Zero(m_);
      unit(r) = 1.0;
      const Eigen::VectorXd u = btran(unit);
      for (std::size_t j = 0; j < p_.cols.size(); ++j) {
        if (in_basis_[j]) continue;
        double alpha = 0.0;
        for (const auto& [row, val] : p_.cols[j].entries) alpha += u(row) * val;
        if (std::abs(alpha) > 1e-7) {
          const Eigen::VectorXd d = ftran(column_dense(static_cast<int>(j)));
          pivot(static_cast<int>(j), r, d);
          break;
        }
      }
    }
  }

  double objective() const {
    double obj = 0.0;
    for (int r = 0; r < m_; ++r)
      obj += cost(basis_[static_cast<std::size_t>(r)], phase_one_) * xB_(r);
    return obj;
  }

  double artificial_sum() const {
    double sum = 0.0;
    for (int r = 0; r < m_; ++r)
      if (is_artificial(basis_[static_cast<std::size_t>(r)])) sum += std::max(0.0, xB_(r));
    return sum;
  }

  Eigen::VectorXd multipliers(bool phase_one) const {
    Eigen::VectorXd fB(m_);
    for (int r = 0; r < m_; ++r) fB(r) = cost(basis_[static_cast<std::size_t>(r)], phase_one);
    return btran(fB);
  }

  void refactor() {
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(m_, m_);
    for (int r = 0; r < m_; ++r) {
      const int col = basis_[static_cast<std::size_t>(r)];
      if (is_artificial(col)) {
        B(col - static_cast<int>(p_.cols.size()), r) = 1.0;
      } else {
        for (const auto& [row, val] : p_.cols[static_cast<std::size_t>(col)].entries)
          B(row, r) = val;
      }
    }
    lu_.compute(B);
    lut_ = lu_.matrixLU().transpose();
    etas_.clear();
    xB_ = lu_.solve(rhs());
    if (opts_.trace) std::fprintf(stderr, "  refactor at iter %ld: min xB %.3e obj %.6f\n", iterations_, xB_.minCoeff(), objective());
    Eigen::VectorXd residual = B * xB_;
    residual -= rhs();
    const double err = residual.cwiseAbs().maxCoeff();
    if (!std::isfinite(err) || err > 1e-6)
      throw std::runtime_error("numerically singular working basis (residual " +
                               std::to_string(err) + " at iteration " +
                               std::to_string(iterations_) + ")");
  }

  bool has_artificials() const { return has_artificials_; }
  long iterations() const { return iterations_; }
  const std::vector<int>& basis() const { return basis_; }

 private:
  const Eigen::VectorXd& rhs() const { return perturbed_ ? rhs_pert_ : rhs_true_; }

  int artificial_id(int row) const { return static_cast<int>(p_.cols.size()) + row; }
  bool is_artificial(int col) const { return col >= static_cast<int>(p_.cols.size()); }

  double cost(int col, bool phase_one) const {
    if (phase_one) return is_artificial(col) ? 1.0 : 0.0;
    return is_artificial(col) ? 0.0 : p_.cols[static_cast<std::size_t>(col)].cost;
  }

  Eigen::VectorXd column_dense(int col) const {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(m_);
    if (is_artificial(col)) {
      a(col - static_cast<int>(p_.cols.size())) = 1.0;
    } else {
      for (const auto& [row, val] : p_.cols[static_cast<std::size_t>(col)].entries) a(row) = val;
    }
    return a;
  }

  Eigen::VectorXd ftran(Eigen::VectorXd v) const {
    v = lu_.solve(v);
    for (const auto& [r, d] : etas_) {
      const double vr = v(r) / d(r);
      v -= vr * d;
      v(r) = vr;
    }
    return v;
  }

  // B^T pi = w via the transposed factor copy; the generic transpose-solve
  // path of the LU class runs against the memory layout and is ~30x slower.
  Eigen::VectorXd btran(Eigen::VectorXd w) const {
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      const auto& [r, d] = *it;
      w(r) = (w(r) - d.dot(w) + d(r) * w(r)) / d(r);
    }
    lut_.triangularView<Eigen::Lower>().solveInPlace(w);      // U^T y = w
    lut_.triangularView<Eigen::UnitUpper>().solveInPlace(w);  // L^T t = y
    return lu_.permutationP().inverse() * w;                  // pi = P^-1 t
  }

  // Devex pricing on cached reduced costs: maximize rc^2 / weight over
  // eligible columns. Falls back to the first eligible index in Bland mode.
  int price() const {
    int best = -1;
    double best_score = 0.0;
    for (std::size_t j = 0; j < p_.cols.size(); ++j) {
      if (in_basis_[j]) continue;
      const double rc = rc_[j];
      if (rc >= -opts_.optimality_tol) continue;
      if (bland_) return static_cast<int>(j);  // lowest eligible index
      const double score = rc * rc / devex_w_[j];
      if (score > best_score) {
        best = static_cast<int>(j);
        best_score = score;
      }
    }
    return best;
  }

  void devex_reset() { devex_w_.assign(p_.cols.size(), 1.0); }

  // fresh reduced costs from the current multipliers
  void rebuild_pricing() {
    const Eigen::VectorXd pi = multipliers(phase_one_);
    rc_.assign(p_.cols.size(), 0.0);
    for (std::size_t j = 0; j < p_.cols.size(); ++j) {
      if (in_basis_[j]) continue;
      double rc = cost(static_cast<int>(j), phase_one_);
      for (const auto& [row, val] : p_.cols[j].entries) rc -= pi(row) * val;
      rc_[j] = rc;
    }
  }

  // One pass over the pivot row updates both the cached reduced costs and the
  // Devex reference weights; this is where the per-iteration work is saved
  // (no dense solve needed for pricing).
  void update_pricing(int entering, int row, const Eigen::VectorXd& d, double rc_entering) {
    const double piv = d(row);
    double w_enter = std::max(devex_w_[static_cast<std::size_t>(entering)],
                              d.squaredNorm() / (piv * piv));
    if (w_enter > 1e12) {
      devex_reset();
      w_enter = 1.0;
    }
    Eigen::VectorXd unit = Eigen::VectorXd::Zero(m_);
    unit(row) = 1.0;
    const Eigen::VectorXd u = btran(unit);
    const double step = rc_entering / piv;
    for (std::size_t j = 0; j < p_.cols.size(); ++j) {
      if (in_basis_[j]) continue;
      double alpha = 0.0;
      for (const auto& [r, val] : p_.cols[j].entries) alpha += u(r) * val;
      if (alpha == 0.0) continue;
      rc_[j] -= step * alpha;
      const double cand = (alpha * alpha / (piv * piv)) * w_enter;
      if (cand > devex_w_[j]) devex_w_[j] = cand;
    }
    const int leaver = basis_[static_cast<std::size_t>(row)];
    if (!is_artificial(leaver)) {
      devex_w_[static_cast<std::size_t>(leaver)] = std::max(w_enter / (piv * piv), 1.0);
      rc_[static_cast<std::size_t>(leaver)] = -step;
    }
    rc_[static_cast<std::size_t>(entering)] = 0.0;
  }

  int ratio_test(const Eigen::VectorXd& d) const {
    int best_row = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m_; ++i) {
      double ratio;
      if (d(i) > kPivotTol) {
        ratio = std::max(xB_(i), 0.0) / d(i);
      } else if (std::abs(d(i)) > kPivotTol &&
                 is_artificial(basis_[static_cast<std::size_t>(i)])) {
        ratio = 0.0;  // artificials may never grow; force them out
      } else {
        continue;
      }
      if (ratio < best_ratio - kRatioTieTol) {
        best_ratio = ratio;
        best_row = i;
      } else if (ratio <= best_ratio + kRatioTieTol && best_row >= 0) {
        // near-ties: prefer the numerically strongest pivot; under the
        // anti-cycling fallback prefer the lowest variable index instead
        if (bland_) {
          if (basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(best_row)])
            best_row = i;
        } else if (std::abs(d(i)) > std::abs(d(best_row))) {
          best_row = i;
        }
      }
    }
    return best_row;
  }

  void pivot(int entering, int row, const Eigen::VectorXd& d) {
    const double theta = std::max(std::max(xB_(row), 0.0) / d(row), 0.0);
    xB_ -= theta * d;
    xB_(row) = theta;
    exchange(entering, row, d);
  }

  // dual step: the leaving basic is negative; the entering value zeroes it,
  // moving the basis toward feasibility
  void dual_pivot(int entering, int row, const Eigen::VectorXd& d) {
    const double theta = xB_(row) / d(row);
    xB_ -= theta * d;
    xB_(row) = theta;
    exchange(entering, row, d);
  }

  void exchange(int entering, int row, const Eigen::VectorXd& d) {
    in_basis_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(row)])] = false;
    basis_[static_cast<std::size_t>(row)] = entering;
    in_basis_[static_cast<std::size_t>(entering)] = true;
    etas_.emplace_back(row, d);
  }

  const Problem& p_;
  Options opts_;
  int m_;
  bool phase_one_ = false;
  bool bland_ = false;
  bool has_artificials_ = false;
  bool perturbed_ = true;
  long iterations_ = 0;
  Eigen::VectorXd rhs_true_;
  Eigen::VectorXd rhs_pert_;
  std::vector<int> basis_;
  std::vector<bool> in_basis_;
  std::vector<double> devex_w_;
  std::vector<double> rc_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  Eigen::MatrixXd lut_;
  std::vector<std::pair<int, Eigen::VectorXd>> etas_;
  Eigen::VectorXd xB_;
};

}  // namespace

Result solve_standard_form(const Problem& problem, const Options& options) {
  Kernel kernel(problem, options);
  Result result;

  if (kernel.has_artificials()) {
    const Outcome phase1 = kernel.run(/*phase_one=*/true);
    if (phase1 == Outcome::IterationLimit) {
      result.outcome = phase1;
      result.iterations = kernel.iterations();
      return result;
    }
    if (phase1 == Outcome::Unbounded)
      throw std::runtime_error("phase-1 objective unbounded; inconsistent basis");
    if (kernel.artificial_sum() > 1e-7) {
      result.outcome = Outcome::Infeasible;
      result.iterations = kernel.iterations();
      return result;
    }
    kernel.evict_artificials();
    kernel.refactor();
  }

  const Outcome phase2 = kernel.run(/*phase_one=*/false);
  result.iterations = kernel.iterations();
  if (phase2 != Outcome::Optimal) {
    result.outcome = phase2;
    return result;
  }

  // drop the anti-degeneracy perturbation and repair the tiny infeasibilities
  // it leaves behind; reduced costs are untouched, so optimality carries over
  if (!kernel.unperturb_and_cleanup()) {
    result.outcome = Outcome::Infeasible;
    result.iterations = kernel.iterations();
    return result;
  }

  // cleanup pivots keep reduced costs nonnegative up to roundoff; let the
  // primal iteration settle anything that drifted
  const Outcome settled = kernel.run(/*phase_one=*/false);
  result.iterations = kernel.iterations();
  if (settled != Outcome::Optimal) {
    result.outcome = settled;
    return result;
  }

  kernel.refactor();
  result.outcome = Outcome::Optimal;
  result.basis = kernel.basis();
  result.objective = kernel.objective();
  const Eigen::VectorXd pi = kernel.multipliers(false);
  result.multipliers.assign(pi.data(), pi.data() + pi.size());
  return result;
}

struct DenseLu::Impl {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
};

DenseLu::DenseLu(int n, const std::vector<std::vector<std::pair<int, double>>>& cols)
    : impl_(std::make_unique<Impl>()) {
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, n);
  for (int c = 0; c < n; ++c)
    for (const auto& [row, val] : cols[static_cast<std::size_t>(c)]) B(row, c) = val;
  impl_->lu.compute(B);
}

DenseLu::~DenseLu() = default;
DenseLu::DenseLu(DenseLu&&) noexcept = default;
DenseLu& DenseLu::operator=(DenseLu&&) noexcept = default;

std::vector<double> DenseLu::solve(const std::vector<double>& rhs) const {
  Eigen::VectorXd b(static_cast<Eigen::Index>(rhs.size()));
  for (std::size_t i = 0; i < rhs.size(); ++i) b(static_cast<Eigen::Index>(i)) = rhs[i];
  const Eigen::VectorXd x = impl_->lu.solve(b);
  return std::vector<double>(x.data(), x.data() + x.size());
}

}  // namespace pirbound::simplex
