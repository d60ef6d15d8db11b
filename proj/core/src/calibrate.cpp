#include "burstlink/calibrate.hpp"

#include "burstlink/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

namespace burstlink::calibrate {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

VectorXd min_norm_solve(const MatrixXd& a, const VectorXd& b) {
    Eigen::CompleteOrthogonalDecomposition<MatrixXd> cod(a);
    return cod.solve(b);
}

/// Lawson-Hanson active-set NNLS.
VectorXd nnls(const MatrixXd& a, const VectorXd& b) {
    const auto n = a.cols();
    VectorXd x = VectorXd::Zero(n);
    std::vector<bool> passive(static_cast<std::size_t>(n), false);
    const double tol = 1e-10 * std::max(1.0, a.norm() * b.norm());

    const auto solve_passive = [&](VectorXd& z) {
        std::vector<Eigen::Index> idx;
        for (Eigen::Index j = 0; j < n; ++j)
            if (passive[static_cast<std::size_t>(j)]) idx.push_back(j);
        z = VectorXd::Zero(n);
        if (idx.empty()) return;
        MatrixXd ap(a.rows(), static_cast<Eigen::Index>(idx.size()));
        for (std::size_t k = 0; k < idx.size(); ++k) ap.col(static_cast<Eigen::Index>(k)) = a.col(idx[k]);
        const VectorXd zp = min_norm_solve(ap, b);
        for (std::size_t k = 0; k < idx.size(); ++k) z[idx[k]] = zp[static_cast<Eigen::Index>(k)];
    };

    for (int outer = 0; outer < 3 * static_cast<int>(n) + 10; ++outer) {
        const VectorXd w = a.transpose() * (b - a * x);
        Eigen::Index best = -1;
        double best_w = tol;
        for (Eigen::Index j = 0; j < n; ++j)
            if (!passive[static_cast<std::size_t>(j)] && w[j] > best_w) {
                best_w = w[j];
                best = j;
            }
        if (best < 0) break;
        passive[static_cast<std::size_t>(best)] = true;

        VectorXd z;
        for (int inner = 0; inner < 3 * static_cast<int>(n) + 10; ++inner) {
            solve_passive(z);
            bool feasible = true;
            for (Eigen::Index j = 0; j < n; ++j)
                if (passive[static_cast<std::size_t>(j)] && z[j] <= 0) feasible = false;
            if (feasible) break;
            double alpha = 1.0;
            for (Eigen::Index j = 0; j < n; ++j)
                if (passive[static_cast<std::size_t>(j)] && z[j] <= 0)
                    alpha = std::min(alpha, x[j] / (x[j] - z[j]));
            x += alpha * (z - x);
            for (Eigen::Index j = 0; j < n; ++j)
                if (passive[static_cast<std::size_t>(j)] && std::abs(x[j]) <= 1e-12) {
                    passive[static_cast<std::size_t>(j)] = false;
                    x[j] = 0;
                }
        }
        x = z;
    }
    return x.cwiseMax(0.0);
}

Eigen::Index rank_of(const MatrixXd& m) {
    if (m.cols() == 0) return 0;
    Eigen::ColPivHouseholderQR<MatrixXd> qr(m);
    qr.setThreshold(1e-10);
    return qr.rank();
}

} // namespace

cstates::PowerProfile FitResult::to_profile(std::string name,
                                            const cstates::PowerProfile* split_source) const {
    cstates::PowerProfile p;
    if (split_source) p = *split_source;
    p.name = std::move(name);
    for (const auto& [state, mw] : power_mw) {
        cstates::StatePower sp;
        sp.total_mw = mw;
        sp.split.others_mw = mw;
        if (split_source && split_source->has(state)) {
            const auto& src = split_source->at(state).split;
            const double fixed = src.dram_background_mw + src.display_mw;
            if (fixed <= mw) {
                sp.split.dram_background_mw = src.dram_background_mw;
                sp.split.display_mw = src.display_mw;
                sp.split.others_mw = mw - fixed;
            }
        }
        p.states[state] = sp;
    }
    return p;
}

FitResult fit_state_powers(const std::vector<MeasuredRun>& runs, const std::vector<PackageCState>& states) {
    if (states.empty()) throw Error(ErrorCode::under_determined, "no states to fit");
    const auto m = static_cast<Eigen::Index>(runs.size());
    const auto n = static_cast<Eigen::Index>(states.size());

    const auto names = [](const std::vector<PackageCState>& list) {
        std::string s;
        for (auto st : list) s += (s.empty() ? "" : ", ") + std::string(to_string(st));
        return s;
    };
    if (m < n)
        throw Error(ErrorCode::under_determined,
                    std::to_string(runs.size()) + " runs for " + std::to_string(states.size()) +
                        " states; unidentifiable: " + names(states));

    MatrixXd a(m, n);
    VectorXd b(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const auto& run = runs[static_cast<std::size_t>(i)];
        if (!(run.measured_avg_power_mw > 0))
            throw Error(ErrorCode::input, "run '" + run.label + "' has non-positive power");
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto it = run.residencies.find(states[static_cast<std::size_t>(j)]);
            a(i, j) = it == run.residencies.end() ? 0.0 : it->second;
        }
        b[i] = run.measured_avg_power_mw;
    }

    const auto rank = rank_of(a);
    if (rank < n) {
        std::vector<PackageCState> bad;
        for (Eigen::Index j = 0; j < n; ++j) {
            MatrixXd reduced(m, n - 1);
            for (Eigen::Index k = 0, c = 0; k < n; ++k)
                if (k != j) reduced.col(c++) = a.col(k);
            if (rank_of(reduced) == rank) bad.push_back(states[static_cast<std::size_t>(j)]);
        }
        throw Error(ErrorCode::under_determined,
                    "residency matrix has rank " + std::to_string(rank) + " for " +
                        std::to_string(n) + " states; unidentifiable: " + names(bad));
    }

    const VectorXd x = nnls(a, b);
    FitResult r;
    r.states = states;
    for (Eigen::Index j = 0; j < n; ++j) r.power_mw[states[static_cast<std::size_t>(j)]] = x[j];
    const VectorXd res = b - a * x;
    r.residuals_mw.assign(res.data(), res.data() + res.size());
    r.rms_residual_mw = std::sqrt(res.squaredNorm() / static_cast<double>(m));
    return r;
}

double predicted_power_mw(const cstates::PowerProfile& profile, const MeasuredRun& run) {
    double mw = 0;
    for (const auto& [state, r] : run.residencies)
        if (r != 0) mw += profile.power_mw(state) * r;
    return mw;
}

Accuracy model_accuracy(const cstates::PowerProfile& profile, const std::vector<MeasuredRun>& runs) {
    Accuracy acc;
    if (runs.empty()) return acc;
    std::map<PackageCState, double> sums;
    double total = 0;
    for (const auto& run : runs) {
        const double a = 1.0 - std::abs(predicted_power_mw(profile, run) - run.measured_avg_power_mw) /
                                   run.measured_avg_power_mw;
        total += a;
        for (const auto& [state, r] : run.residencies)
            if (r > 0.5) {
                sums[state] += a;
                ++acc.per_state_runs[state];
            }
    }
    acc.overall_percent = 100.0 * total / static_cast<double>(runs.size());
    for (const auto& [state, s] : sums)
        acc.per_state_percent[state] = 100.0 * s / static_cast<double>(acc.per_state_runs[state]);
    return acc;
}

std::vector<MeasuredRun> generate_runs(const cstates::PowerProfile& profile,
                                       const std::vector<PackageCState>& states, std::size_t count,
                                       double noise, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dominant(0.55, 0.9);
    std::uniform_real_distribution<double> weight(0.0, 1.0);
    std::normal_distribution<double> err(0.0, noise);

    std::vector<MeasuredRun> runs;
    runs.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        MeasuredRun run;
        run.label = "synthetic-" + std::to_string(i);
        const std::size_t lead = i % states.size();
        const double lead_share = states.size() == 1 ? 1.0 : dominant(rng);
        std::vector<double> w(states.size(), 0.0);
        double wsum = 0;
        for (std::size_t j = 0; j < states.size(); ++j)
            if (j != lead) wsum += (w[j] = weight(rng));
        for (std::size_t j = 0; j < states.size(); ++j)
            run.residencies[states[j]] =
                j == lead ? lead_share : (wsum > 0 ? (1.0 - lead_share) * w[j] / wsum : 0.0);
        const double truth = predicted_power_mw(profile, run);
        run.measured_avg_power_mw = noise > 0 ? truth * (1.0 + err(rng)) : truth;
        runs.push_back(std::move(run));
    }
    return runs;
}

std::vector<PackageCState> states_in(const std::vector<MeasuredRun>& runs) {
    std::vector<PackageCState> out;
    for (auto s : kAllStates)
        for (const auto& run : runs) {
            const auto it = run.residencies.find(s);
            if (it != run.residencies.end() && it->second != 0) {
                out.push_back(s);
                break;
            }
        }
    return out;
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

double to_double(const std::string& s, std::size_t line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorCode::input, "runs line " + std::to_string(line) + ": bad number '" + s + "'");
    }
}

} // namespace

std::vector<MeasuredRun> parse_runs_csv(std::string_view csv) {
    std::istringstream in{std::string(csv)};
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    std::vector<std::optional<PackageCState>> columns;
    std::optional<std::size_t> power_col, bw_col;
    std::vector<MeasuredRun> runs;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        auto cells = split_csv(line);
        if (header.empty()) {
            header = cells;
            if (header.empty() || header.front() != "label")
                throw Error(ErrorCode::input, "runs CSV must start with a 'label' column");
            columns.resize(header.size());
            for (std::size_t c = 1; c < header.size(); ++c) {
                if (header[c] == "power_mw") power_col = c;
                else if (header[c] == "bw") bw_col = c;
                else if (auto s = parse_state(header[c])) columns[c] = *s;
                else throw Error(ErrorCode::input, "runs CSV: unknown column '" + header[c] + "'");
            }
            if (!power_col) throw Error(ErrorCode::input, "runs CSV: missing power_mw column");
            continue;
        }
        if (cells.size() != header.size())
            throw Error(ErrorCode::input, "runs line " + std::to_string(line_no) + ": expected " +
                                              std::to_string(header.size()) + " cells");
        MeasuredRun run;
        run.label = cells[0];
        double sum = 0;
        for (std::size_t c = 1; c < cells.size(); ++c) {
            if (columns[c]) {
                const double r = to_double(cells[c], line_no);
                if (r < 0) throw Error(ErrorCode::input, "runs line " + std::to_string(line_no) + ": negative residency");
                run.residencies[*columns[c]] = r;
                sum += r;
            }
        }
        if (sum > 1.0 + 1e-6)
            throw Error(ErrorCode::input, "runs line " + std::to_string(line_no) + ": residencies exceed 1");
        run.measured_avg_power_mw = to_double(cells[*power_col], line_no);
        if (!(run.measured_avg_power_mw > 0))
            throw Error(ErrorCode::input, "runs line " + std::to_string(line_no) + ": power must be > 0");
        if (bw_col && !cells[*bw_col].empty()) run.dram_bandwidth = to_double(cells[*bw_col], line_no);
        runs.push_back(std::move(run));
    }
    if (header.empty()) throw Error(ErrorCode::input, "runs CSV is empty");
    return runs;
}

std::vector<MeasuredRun> load_runs_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::input, "cannot open runs file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_runs_csv(ss.str());
}

std::string runs_to_csv(const std::vector<MeasuredRun>& runs, const std::vector<PackageCState>& states) {
    std::ostringstream out;
    out << std::setprecision(17) << "label";
    for (auto s : states) out << ',' << to_string(s);
    out << ",power_mw\n";
    for (const auto& run : runs) {
        out << run.label;
        for (auto s : states) {
            const auto it = run.residencies.find(s);
            out << ',' << (it == run.residencies.end() ? 0.0 : it->second);
        }
        out << ',' << run.measured_avg_power_mw << '\n';
    }
    return out.str();
}

} // namespace burstlink::calibrate
