#include "pfopt/strategies.hpp"

#include "pfopt/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pfopt {

std::string to_string(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::EW: return "EW";
        case StrategyKind::GMV: return "GMV";
        case StrategyKind::GMV_LO: return "GMV-LO";
        case StrategyKind::ERC: return "ERC";
        case StrategyKind::RIDGE: return "RIDGE";
        case StrategyKind::LASSO: return "LASSO";
        case StrategyKind::SLOPE: return "SLOPE";
        case StrategyKind::SLOPE_LO: return "SLOPE-LO";
        case StrategyKind::SLOPE_MV: return "SLOPE-MV";
    }
    throw std::logic_error("to_string: bad StrategyKind");
}

StrategyKind strategy_from_string(const std::string& name) {
    if (name == "EW") return StrategyKind::EW;
    if (name == "GMV") return StrategyKind::GMV;
    if (name == "GMV-LO") return StrategyKind::GMV_LO;
    if (name == "ERC") return StrategyKind::ERC;
    if (name == "RIDGE") return StrategyKind::RIDGE;
    if (name == "LASSO") return StrategyKind::LASSO;
    if (name == "SLOPE") return StrategyKind::SLOPE;
    if (name == "SLOPE-LO") return StrategyKind::SLOPE_LO;
    if (name == "SLOPE-MV") return StrategyKind::SLOPE_MV;
    throw std::invalid_argument("unknown strategy: " + name);
}

namespace {

Allocation finish_allocation(const Vector& raw, double threshold, double lambda_used,
                             bool flagged) {
    Allocation a;
    a.weights = threshold_weights(raw, threshold);
    for (Eigen::Index i = 0; i < a.weights.size(); ++i)
        if (a.weights[i] != 0.0) a.active_set.push_back(static_cast<int>(i));
    a.groups = extract_groups(a.weights, 1e-6);
    a.lambda_used = lambda_used;
    a.selection_flagged = flagged;
    return a;
}

/// Euclidean projection onto the simplex {w >= 0, sum w = 1}.
Vector project_simplex(const Vector& y) {
    const Eigen::Index k = y.size();
    std::vector<double> u(y.data(), y.data() + k);
    std::sort(u.begin(), u.end(), std::greater<double>());
    double css = 0.0;
    double tau = 0.0;
    int rho = 0;
    for (Eigen::Index i = 0; i < k; ++i) {
        css += u[static_cast<std::size_t>(i)];
        const double t = (css - 1.0) / static_cast<double>(i + 1);
        if (u[static_cast<std::size_t>(i)] - t > 0.0) {
            rho = static_cast<int>(i + 1);
            tau = t;
        }
    }
    (void)rho;
    return (y.array() - tau).max(0.0);
}

double erc_objective(const Vector& w, const Matrix& sigma) {
    const Vector sw = sigma * w;
    const double var = w.dot(sw);
    const double target = 1.0 / static_cast<double>(w.size());
    double f = 0.0;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        const double g = w[i] * sw[i] / var - target;
        f += g * g;
    }
    return f;
}

Vector erc_gradient(const Vector& w, const Matrix& sigma) {
    const Eigen::Index k = w.size();
    const Vector sw = sigma * w;
    const double var = w.dot(sw);
    const double target = 1.0 / static_cast<double>(k);
    Vector g(k);
    for (Eigen::Index i = 0; i < k; ++i) g[i] = w[i] * sw[i] / var - target;

    // d g_i / d w_j = (delta_ij sw_i + w_i sigma_ij)/var - w_i sw_i * 2 sw_j / var^2
    Vector grad = Vector::Zero(k);
    const Vector a = g.cwiseProduct(w);            // g_i w_i
    grad += 2.0 * g.cwiseProduct(sw) / var;        // delta term
    grad += 2.0 * (sigma * a) / var;               // sigma term
    const double c = g.dot(w.cwiseProduct(sw));    // sum_i g_i w_i sw_i
    grad -= 4.0 * c * sw / (var * var);
    return grad;
}

Vector erc_descend(Vector w, const Matrix& sigma, const SolverConfig& config) {
    double f = erc_objective(w, sigma);
    double step = 1.0;
    Vector prev_w = w;
    Vector prev_grad = erc_gradient(w, sigma);
    for (int iter = 0; iter < config.max_iter; ++iter) {
        const Vector grad = erc_gradient(w, sigma);
        if (iter > 0) {
            // Barzilai-Borwein initial step, clamped.
            const Vector dw = w - prev_w;
            const Vector dg = grad - prev_grad;
            const double denom = dw.dot(dg);
            step = (denom > 0.0) ? std::min(1e6, std::max(1e-12, dw.squaredNorm() / denom))
                                 : 1.0;
        }
        prev_w = w;
        prev_grad = grad;

        bool moved = false;
        for (int bt = 0; bt < 60; ++bt) {
            const Vector cand = project_simplex(w - step * grad);
            const double fc = erc_objective(cand, sigma);
            const double decrease = grad.dot(w - cand);
            if (fc <= f - 1e-4 * decrease && fc < f) {
                w = cand;
                f = fc;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (f <= 1e-14) break;
        if (!moved) break;
    }
    return w;
}

std::pair<std::vector<std::size_t>, bool> marker_indices(int from, int to, int count) {
    std::vector<std::size_t> markers;
    const bool degenerate = (to <= from);
    for (int j = 0; j < count; ++j) {
        const double pos = from + (to - from) * static_cast<double>(j) /
                                      static_cast<double>(count - 1);
        markers.push_back(static_cast<std::size_t>(std::llround(pos)));
    }
    return {markers, degenerate};
}

}  // namespace

Allocation equal_weight(Eigen::Index k) {
    require(k >= 1, "equal_weight: k >= 1");
    Allocation a;
    a.weights = Vector::Constant(k, 1.0 / static_cast<double>(k));
    a.active_set.resize(static_cast<std::size_t>(k));
    std::iota(a.active_set.begin(), a.active_set.end(), 0);
    a.groups = {a.active_set};
    return a;
}

Allocation erc_solve(const Matrix& sigma, const SolverConfig& config) {
    const Eigen::Index k = sigma.rows();
    require(k >= 1 && sigma.cols() == k, "erc_solve: bad sigma");
    require((sigma.diagonal().array() > 0.0).all(), "erc_solve: nonpositive variance");

    const Vector ew = Vector::Constant(k, 1.0 / static_cast<double>(k));
    Vector inv_vol = sigma.diagonal().cwiseSqrt().cwiseInverse();
    inv_vol /= inv_vol.sum();

    const Vector from_ew = erc_descend(ew, sigma, config);
    const Vector from_iv = erc_descend(inv_vol, sigma, config);
    const Vector best = (erc_objective(from_ew, sigma) <= erc_objective(from_iv, sigma))
                            ? from_ew
                            : from_iv;
    require(erc_objective(best, sigma) <= 1e-12, "erc_solve: did not converge");

    Allocation a;
    a.weights = best;
    for (Eigen::Index i = 0; i < k; ++i)
        if (best[i] != 0.0) a.active_set.push_back(static_cast<int>(i));
    a.groups = extract_groups(best, 1e-6);
    return a;
}

Vector threshold_weights(const Vector& w, double threshold) {
    require(threshold >= 0.0, "threshold_weights: negative threshold");
    Vector out = w;
    for (Eigen::Index i = 0; i < out.size(); ++i)
        if (std::abs(out[i]) < threshold) out[i] = 0.0;
    if (threshold == 0.0) return out;
    const double total = out.sum();
    bool any = false;
    for (Eigen::Index i = 0; i < out.size(); ++i) any |= out[i] != 0.0;
    require(any, "threshold_weights: all weights below threshold");
    require(std::abs(total) >= 1e-6, "threshold_weights: survivor sum too small to rescale");
    return out / total;
}

std::vector<std::vector<int>> extract_groups(const Vector& w, double tol) {
    require(tol > 0.0, "extract_groups: tol must be positive");
    std::vector<int> active;
    for (Eigen::Index i = 0; i < w.size(); ++i)
        if (w[i] != 0.0) active.push_back(static_cast<int>(i));
    std::stable_sort(active.begin(), active.end(),
                     [&](int a, int b) { return std::abs(w[a]) > std::abs(w[b]); });

    std::vector<std::vector<int>> groups;
    std::size_t i = 0;
    while (i < active.size()) {
        std::vector<int> group{active[i]};
        const double top = std::abs(w[active[i]]);
        std::size_t j = i + 1;
        while (j < active.size() && top - std::abs(w[active[j]]) <= tol) {
            group.push_back(active[j]);
            ++j;
        }
        std::sort(group.begin(), group.end());
        groups.push_back(std::move(group));
        i = j;
    }
    return groups;
}

std::size_t select_lambda_sparse(const FrontierProfile& frontier, double target_active_frac,
                                 bool* flagged) {
    require(!frontier.points.empty(), "select_lambda_sparse: empty frontier");
    require(target_active_frac > 0.0 && target_active_frac <= 1.0,
            "select_lambda_sparse: target fraction in (0,1]");
    if (flagged) *flagged = false;

    const int lo_onset = frontier.first_long_only_index();
    const std::size_t end =
        (lo_onset < 0) ? frontier.points.size() : static_cast<std::size_t>(lo_onset);
    if (end == 0) {
        if (flagged) *flagged = true;
        return 0;
    }
    const double k = static_cast<double>(frontier.assets);
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < end; ++i) {
        const double frac = static_cast<double>(frontier.points[i].active_count) / k;
        const double dist = std::abs(frac - target_active_frac);
        if (dist < best_dist) {
            best_dist = dist;
            best = i;
        }
    }
    return best;
}

std::size_t select_lambda_ridge(const FrontierProfile& frontier, bool* flagged) {
    require(!frontier.points.empty(), "select_lambda_ridge: empty frontier");
    if (flagged) *flagged = false;
    const int ew_idx = frontier.first_ew_index();
    if (ew_idx < 0) {
        if (flagged) *flagged = true;
        return frontier.points.size() - 1;
    }
    if (ew_idx == 0) {
        if (flagged) *flagged = true;
        return 0;
    }
    auto [markers, degenerate] = marker_indices(0, ew_idx, 6);
    if (degenerate && flagged) *flagged = true;
    return markers[4];  // the marker right before the equal-weight end
}

std::size_t select_lambda_slope_lo(const FrontierProfile& frontier, bool* flagged) {
    require(!frontier.points.empty(), "select_lambda_slope_lo: empty frontier");
    if (flagged) *flagged = false;
    int start = frontier.first_long_only_index();
    if (start < 0) start = 0;
    const int ew_idx = frontier.first_ew_index();
    if (ew_idx < 0) {
        if (flagged) *flagged = true;
        return frontier.points.size() - 1;
    }
    auto [markers, degenerate] = marker_indices(start, ew_idx, 6);
    if (degenerate && flagged) *flagged = true;
    std::size_t best = markers[0];
    int best_groups = frontier.points[best].group_count;
    for (const std::size_t m : markers) {
        if (frontier.points[m].group_count > best_groups) {
            best_groups = frontier.points[m].group_count;
            best = m;
        }
    }
    return best;
}

Allocation slope_mv(const ReturnsMatrix& R, const std::vector<std::vector<int>>& groups,
                    double threshold, const SolverConfig& config) {
    require(!groups.empty(), "slope_mv: empty group list");
    const Eigen::Index k = R.values.cols();
    const Vector mean = R.values.colwise().mean();

    std::vector<int> picks;
    for (const auto& group : groups) {
        require(!group.empty(), "slope_mv: empty group");
        int best = -1;
        double best_var = std::numeric_limits<double>::infinity();
        for (const int idx : group) {
            require(idx >= 0 && idx < k, "slope_mv: group index out of range");
            const double var =
                (R.values.col(idx).array() - mean[idx]).square().sum() /
                static_cast<double>(R.values.rows() - 1);
            if (var < best_var) {
                best_var = var;
                best = idx;
            }
        }
        picks.push_back(best);
    }
    std::sort(picks.begin(), picks.end());
    picks.erase(std::unique(picks.begin(), picks.end()), picks.end());

    ReturnsMatrix sub;
    sub.values.resize(R.values.rows(), static_cast<Eigen::Index>(picks.size()));
    for (std::size_t j = 0; j < picks.size(); ++j) {
        sub.values.col(static_cast<Eigen::Index>(j)) = R.values.col(picks[j]);
        sub.tickers.push_back(R.tickers.empty() ? std::to_string(picks[j]) : R.tickers[picks[j]]);
    }
    sub.dates = R.dates;

    const CovarianceEstimate sigma = ledoit_wolf_shrinkage(sub);
    const Eigen::Index m = sigma.size();
    SolverProblem problem{sigma.matrix, Vector::Zero(m), 1.0, LambdaSequence::zero(m), true};
    const SolverSolution sol = admm_solve(problem, config);

    Vector full = Vector::Zero(k);
    for (std::size_t j = 0; j < picks.size(); ++j) full[picks[j]] = sol.v[static_cast<Eigen::Index>(j)];
    return finish_allocation(full, threshold, 0.0, !sol.converged);
}

Allocation allocate(const StrategySpec& spec, const Matrix& sigma, const Vector& mu,
                    const ReturnsMatrix& R, const Vector& grid, double threshold,
                    const SolverConfig& config) {
    const Eigen::Index k = sigma.rows();
    switch (spec.kind) {
        case StrategyKind::EW:
            return equal_weight(k);
        case StrategyKind::GMV:
            return finish_allocation(gmv_closed_form(sigma), threshold, 0.0, false);
        case StrategyKind::GMV_LO: {
            SolverProblem problem{sigma, Vector::Zero(k), 1.0, LambdaSequence::zero(k), true};
            const SolverSolution sol = admm_solve(problem, config);
            return finish_allocation(sol.v, threshold, 0.0, !sol.converged);
        }
        case StrategyKind::ERC: {
            Allocation a = erc_solve(sigma, config);
            a.weights = threshold_weights(a.weights, threshold);
            return a;
        }
        case StrategyKind::RIDGE: {
            // Closed-form path over the same lambda grid.
            FrontierProfile profile;
            profile.assets = k;
            profile.points.resize(static_cast<std::size_t>(grid.size()));
            for (Eigen::Index g = 0; g < grid.size(); ++g) {
                FrontierPoint& pt = profile.points[static_cast<std::size_t>(g)];
                pt.lambda_scale = grid[g];
                pt.weights = ridge_closed_form(sigma, grid[g], 1.0);
                pt.shorting = shorting_amount(pt.weights);
            }
            bool flagged = false;
            const std::size_t idx = select_lambda_ridge(profile, &flagged);
            return finish_allocation(profile.points[idx].weights, threshold, grid[idx], flagged);
        }
        case StrategyKind::LASSO:
        case StrategyKind::SLOPE: {
            PathSpec path{spec.kind == StrategyKind::LASSO ? PenaltyFamily::Lasso
                                                           : PenaltyFamily::Slope,
                          false, spec.q};
            const FrontierProfile profile =
                sweep_penalty_path({sigma, mu, {}, {}, 1.0}, grid, path, config);
            bool flagged = false;
            const std::size_t idx =
                select_lambda_sparse(profile, spec.target_active_frac, &flagged);
            return finish_allocation(profile.points[idx].weights, threshold, grid[idx], flagged);
        }
        case StrategyKind::SLOPE_LO: {
            PathSpec path{PenaltyFamily::Slope, true, spec.q};
            const FrontierProfile profile =
                sweep_penalty_path({sigma, mu, {}, {}, 1.0}, grid, path, config);
            bool flagged = false;
            const std::size_t idx = select_lambda_slope_lo(profile, &flagged);
            return finish_allocation(profile.points[idx].weights, threshold, grid[idx], flagged);
        }
        case StrategyKind::SLOPE_MV: {
            PathSpec path{PenaltyFamily::Slope, true, spec.q};
            const FrontierProfile profile =
                sweep_penalty_path({sigma, mu, {}, {}, 1.0}, grid, path, config);
            bool flagged = false;
            const std::size_t idx = select_lambda_slope_lo(profile, &flagged);
            const auto groups = extract_groups(profile.points[idx].weights, 1e-6);
            Allocation a = slope_mv(R, groups, threshold, config);
            a.lambda_used = grid[idx];
            a.selection_flagged = a.selection_flagged || flagged;
            return a;
        }
    }
    throw std::logic_error("allocate: bad StrategyKind");
}

}  // namespace pfopt
