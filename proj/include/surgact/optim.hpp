#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "surgact/tensor.hpp"

namespace surgact {

struct AdamState {
    Mat m;  // first moment
    Mat v;  // second moment
    std::int64_t step = 0;
    double beta1 = 0.9;
    double beta2 = 0.98;
    double eps = 1e-9;

    AdamState() = default;
    AdamState(Index rows, Index cols, double b1, double b2, double e)
        : m(rows, cols), v(rows, cols), beta1(b1), beta2(b2), eps(e) {}
};

// Standard Adam update with bias correction. Reads param.grad, mutates
// param.value and the state; increments state.step by one.
inline void adam_step(Param& param, AdamState& state, double lr) {
    require_shape(state.m.same_shape(param.value), "adam_step", state.m.shape_str(),
                  param.value.shape_str());
    state.step += 1;
    const double b1t = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
    const double b2t = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
    for (std::size_t i = 0; i < param.value.data.size(); ++i) {
        const double g = param.grad.data[i];
        state.m.data[i] = state.beta1 * state.m.data[i] + (1.0 - state.beta1) * g;
        state.v.data[i] = state.beta2 * state.v.data[i] + (1.0 - state.beta2) * g * g;
        const double mhat = state.m.data[i] / b1t;
        const double vhat = state.v.data[i] / b2t;
        param.value.data[i] -= lr * mhat / (std::sqrt(vhat) + state.eps);
    }
}

// Warmup-then-decay schedule from the classical transformer recipe:
// rate(step) = d_model^(-1/2) * min(step^(-1/2), step * warmup^(-3/2)).
// Peaks exactly at step == warmup.
struct NoamSchedule {
    Index d_model = 60;
    Index warmup_steps = 4000;
};

inline double noam_lr(const NoamSchedule& sched, std::int64_t step) {
    if (step < 1) throw ConfigError("noam_lr: step must be >= 1, got " + std::to_string(step));
    const double s = static_cast<double>(step);
    const double w = static_cast<double>(sched.warmup_steps);
    return std::pow(static_cast<double>(sched.d_model), -0.5) *
           std::min(std::pow(s, -0.5), s * std::pow(w, -1.5));
}

// Optimizer over an enumerable parameter set. Parameters are registered once
// in a fixed order; step() applies Adam to each with the shared learning rate.
class AdamOptimizer {
public:
    AdamOptimizer(double beta1, double beta2, double eps) : beta1_(beta1), beta2_(beta2), eps_(eps) {}

    template <class Model>
    void attach(Model& model) {
        params_.clear();
        states_.clear();
        model.visit_params([&](Param& p) {
            params_.push_back(&p);
            states_.emplace_back(p.value.rows, p.value.cols, beta1_, beta2_, eps_);
        });
    }

    void zero_grad() {
        for (Param* p : params_) p->zero_grad();
    }

    void step(double lr) {
        for (std::size_t i = 0; i < params_.size(); ++i) adam_step(*params_[i], states_[i], lr);
    }

    std::vector<AdamState>& states() { return states_; }

private:
    double beta1_, beta2_, eps_;
    std::vector<Param*> params_;
    std::vector<AdamState> states_;
};

}  // namespace surgact
