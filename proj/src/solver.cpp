#include "fiberfrac/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fiberfrac/errors.hpp"

namespace fiberfrac {

namespace {

using Triplet = Eigen::Triplet<double>;

enum class DofKind { free, zero, loaded };

}  // namespace

DofMap::DofMap(const NetworkModel& model) {
    const int n_nodes = static_cast<int>(model.nodes.size());
    n_dofs_ = kNodeDofs * n_nodes;
    std::vector<DofKind> kind(n_dofs_, DofKind::free);

    std::vector<bool> used(n_nodes, false);
    for (const auto& e : model.elements) {
        used[e.nodes[0]] = true;
        used[e.nodes[1]] = true;
    }
    for (int n = 0; n < n_nodes; ++n) {
        if (!used[n]) {
            for (int k = 0; k < kNodeDofs; ++k) kind[kNodeDofs * n + k] = DofKind::zero;
        }
        if (model.plane_constraint) {
            for (int k : {2, 3, 4}) kind[kNodeDofs * n + k] = DofKind::zero;
        }
    }
    for (int n : model.bcs.fixed) {
        for (int k = 0; k < kNodeDofs; ++k) kind[kNodeDofs * n + k] = DofKind::zero;
    }
    for (int n : model.bcs.moving) {
        kind[kNodeDofs * n + 0] = DofKind::loaded;
        kind[kNodeDofs * n + 1] = DofKind::zero;
        kind[kNodeDofs * n + 5] = DofKind::zero;
    }

    free_index_.assign(n_dofs_, -1);
    prescribed_index_.assign(n_dofs_, -1);
    for (int i = 0; i < n_dofs_; ++i) {
        if (kind[i] == DofKind::free) {
            free_index_[i] = static_cast<int>(free_.size());
            free_.push_back(i);
        } else {
            prescribed_index_[i] = static_cast<int>(prescribed_.size());
            prescribed_.push_back(i);
            if (kind[i] == DofKind::loaded) loaded_.push_back(i);
        }
    }
}

Eigen::VectorXd DofMap::prescribed_values(double u) const {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n_prescribed());
    for (int dof : loaded_) v(prescribed_index_[dof]) = u;
    return v;
}

GlobalSystem assemble(const NetworkModel& model, const std::vector<ElementGeometry>& geoms,
                      const DofMap& dofs, const std::vector<HingeState>& states_n,
                      const Eigen::VectorXd& d, const SchemeConfig& scheme,
                      bool with_full_matrix) {
    const std::size_t n_el = model.elements.size();
    GlobalSystem sys;
    sys.f_int = Eigen::VectorXd::Zero(dofs.n_dofs());
    sys.states.resize(n_el);

    std::vector<Triplet> ff, fp, full;
    ff.reserve(144 * n_el);
    fp.reserve(36 * n_el);
    if (with_full_matrix) full.reserve(144 * n_el);

    std::array<int, 12> gdof{};
    for (std::size_t e = 0; e < n_el; ++e) {
        const BeamElement& el = model.elements[e];
        const FiberSection& section = model.sections[el.section];
        const ElementGeometry& geom = geoms[e];
        for (int a = 0; a < 2; ++a) {
            for (int k = 0; k < kNodeDofs; ++k) gdof[kNodeDofs * a + k] = kNodeDofs * el.nodes[a] + k;
        }
        Vector12 d_e;
        for (int i = 0; i < 12; ++i) d_e(i) = d(gdof[i]);

        ElementResponse resp;
        try {
            resp = evaluate_element(section, geom, d_e, states_n[e], scheme);
        } catch (const Error& err) {
            std::ostringstream os;
            os << "element " << el.id << ": " << err.what();
            throw ElementError(os.str(), el.id, err.kind());
        }

        const HingeState& st = resp.hinge.state;
        sys.states[e] = st;
        if (st.ruptured) ++sys.n_ruptured;
        if (resp.hinge.loading && !st.ruptured) ++sys.n_softening;
        if (resp.k_min_active) ++sys.n_floored;
        sys.min_beta = std::min(sys.min_beta, resp.beta_used);

        Vector6 eb = resp.strain.as_vector();
        eb(0) -= st.xi / geom.l_e;
        const Vector6 c = bulk_tangent(section).diagonal();
        sys.stored_energy += 0.5 * geom.l_e * eb.dot(c.cwiseProduct(eb));
        sys.dissipated_energy += hinge_dissipation(st, section);

        for (int i = 0; i < 12; ++i) {
            sys.f_int(gdof[i]) += resp.f_global(i);
            const int fi = dofs.free_index(gdof[i]);
            for (int j = 0; j < 12; ++j) {
                const double kij = resp.K_global(i, j);
                if (with_full_matrix) full.emplace_back(gdof[i], gdof[j], kij);
                if (fi < 0) continue;
                const int fj = dofs.free_index(gdof[j]);
                if (fj >= 0) {
                    ff.emplace_back(fi, fj, kij);
                } else {
                    fp.emplace_back(fi, dofs.prescribed_index(gdof[j]), kij);
                }
            }
        }
    }

    sys.K_ff.resize(dofs.n_free(), dofs.n_free());
    sys.K_ff.setFromTriplets(ff.begin(), ff.end());
    sys.K_fp.resize(dofs.n_free(), dofs.n_prescribed());
    sys.K_fp.setFromTriplets(fp.begin(), fp.end());
    if (with_full_matrix) {
        sys.K_full.resize(dofs.n_dofs(), dofs.n_dofs());
        sys.K_full.setFromTriplets(full.begin(), full.end());
    }
    sys.r_free.resize(dofs.n_free());
    for (int i = 0; i < dofs.n_free(); ++i) sys.r_free(i) = sys.f_int(dofs.free_dofs()[i]);
    return sys;
}

void SolveConfig::validate() const {
    scheme.validate();
    if (n_steps < 1) throw InvalidConfig("n_steps must be at least 1");
    if (max_iters < 1) throw InvalidConfig("max_iters must be at least 1");
    if (!(tol_rel > 0.0)) throw InvalidConfig("tol_rel must be positive");
    if (!(tol_abs >= 0.0)) throw InvalidConfig("tol_abs must be positive (0 selects the default)");
    if (!std::isfinite(delta_0)) throw InvalidConfig("delta_0 must be finite");
    if (max_bisections < 0) throw InvalidConfig("max_bisections must be non-negative");
}

Solver::Solver(NetworkModel model, SolveConfig config)
    : model_(std::move(model)), config_(std::move(config)), dofs_(model_) {
    config_.validate();
    validate_model(model_);
    geoms_ = element_geometries(model_);

    tol_abs_ = config_.tol_abs;
    if (tol_abs_ == 0.0) {
        double n_bar = 0.0;
        for (const auto& s : model_.sections) n_bar = std::max(n_bar, s.N_bar());
        tol_abs_ = 1e-9 * n_bar * std::sqrt(static_cast<double>(std::max<std::size_t>(1, model_.elements.size())));
    }

    d_ = Eigen::VectorXd::Zero(dofs_.n_dofs());
    states_.assign(model_.elements.size(), HingeState{});
    sys_ = assemble(model_, geoms_, dofs_, states_, d_, config_.scheme);
}

double Solver::reaction() const {
    double r = 0.0;
    for (int dof : dofs_.loaded_dofs()) r += sys_.f_int(dof);
    return r;
}

StepOutcome Solver::attempt(double u_target) {
    StepOutcome out;
    const double du = u_target - u_;
    if (du == 0.0 && sys_.r_free.norm() <= tol_abs_) {
        out.converged = true;
        u_ = u_target;
        return out;
    }

    Eigen::VectorXd d = d_;
    for (int dof : dofs_.loaded_dofs()) d(dof) += du;
    const Eigen::VectorXd dd_p = dofs_.prescribed_values(du);

    const GlobalSystem* current = &sys_;
    Eigen::VectorXd rhs = -sys_.r_free - sys_.K_fp * dd_p;
    GlobalSystem trial;
    double ref = 0.0;

    try {
        for (int it = 1; it <= config_.max_iters; ++it) {
            out.iterations = it;
            if (dofs_.n_free() > 0) {
                const Eigen::VectorXd dx = linear_.solve(current->K_ff, rhs);
                last_negative_pivots_ = linear_.info().negative_pivots;
                for (int i = 0; i < dofs_.n_free(); ++i) d(dofs_.free_dofs()[i]) += dx(i);
            }
            trial = assemble(model_, geoms_, dofs_, states_, d, config_.scheme);
            current = &trial;

            if (it == 1) ref = trial.f_int.norm();
            const double res = trial.r_free.norm();
            if (!std::isfinite(res)) {
                out.reason = "non-finite residual";
                return out;
            }
            if (res <= std::max(config_.tol_rel * ref, tol_abs_)) {
                out.converged = true;
                d_ = std::move(d);
                u_ = u_target;
                states_ = trial.states;
                sys_ = std::move(trial);
                return out;
            }
            rhs = -trial.r_free;
        }
    } catch (const Error& e) {
        out.reason = std::string(e.kind()) + ": " + e.what();
        return out;
    }
    std::ostringstream os;
    os << "no convergence within " << config_.max_iters << " iterations";
    out.reason = os.str();
    return out;
}

StepOutcome Solver::advance(double u_from, double u_to, int depth) {
    StepOutcome first = attempt(u_to);
    if (first.converged || !config_.bisect || depth >= config_.max_bisections) return first;

    const double mid = 0.5 * (u_from + u_to);
    StepOutcome a = advance(u_from, mid, depth + 1);
    a.iterations += first.iterations;
    if (!a.converged) return a;
    StepOutcome b = advance(mid, u_to, depth + 1);
    b.iterations += a.iterations;
    return b;
}

StepOutcome Solver::solve_step(double u_target) { return advance(u_, u_target, 0); }

SolveReport Solver::run() {
    SolveReport report;
    report.config = config_;
    report.nominal_area = model_.nominal_area();
    report.n_elements = static_cast<int>(model_.elements.size());

    auto record = [&](int step, int iterations, double work) {
        StepRecord r;
        r.step = step;
        r.u = u_;
        r.reaction = reaction();
        r.stress = report.nominal_area > 0.0 ? r.reaction / report.nominal_area : 0.0;
        r.iterations = iterations;
        r.n_ruptured = sys_.n_ruptured;
        r.min_beta = sys_.min_beta;
        r.n_softening = sys_.n_softening;
        r.n_floored = sys_.n_floored;
        r.negative_pivots = last_negative_pivots_;
        r.external_work = work;
        r.stored_energy = sys_.stored_energy;
        r.dissipated_energy = sys_.dissipated_energy;
        report.steps.push_back(r);
    };
    auto checkpoint = [&](int step) {
        if (std::find(config_.checkpoints.begin(), config_.checkpoints.end(), step) !=
            config_.checkpoints.end()) {
            report.checkpoints.push_back({step, states_});
        }
    };

    record(0, 0, 0.0);
    checkpoint(0);
    double work = 0.0;
    for (int s = 1; s <= config_.n_steps; ++s) {
        const double u_prev = u_;
        const double r_prev = report.steps.back().reaction;
        const double u_target = config_.delta_0 * static_cast<double>(s) / config_.n_steps;
        const StepOutcome out = solve_step(u_target);
        if (!out.converged) {
            report.failed_step_iterations = out.iterations;
            report.termination = Termination::step_failed;
            report.failed_step = s;
            report.failure_reason = out.reason;
            break;
        }
        report.cumulative_iterations += out.iterations;
        work += 0.5 * (r_prev + reaction()) * (u_ - u_prev);
        record(s, out.iterations, work);
        checkpoint(s);
    }
    report.final_states = states_;
    report.final_displacement = d_;
    return report;
}

SolveReport run(const NetworkModel& model, const SolveConfig& config) {
    Solver solver(model, config);
    return solver.run();
}

std::string_view termination_name(Termination t) {
    return t == Termination::converged ? "converged" : "step_failed";
}

}  // namespace fiberfrac
