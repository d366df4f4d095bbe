#ifndef KEPLERGEO_RK54_HPP
#define KEPLERGEO_RK54_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>

namespace keplergeo {

/// Adaptive embedded Dormand-Prince 5(4) stepper with the classical
/// continuous extension.  The driver advances one accepted step at a time so
/// callers can clamp endpoints to sample times and locate events on the
/// dense interpolant.
template <std::size_t N>
class Dopri5 {
public:
    using State = std::array<double, N>;
    using Rhs = std::function<void(double, const State&, State&)>;

    struct Options {
        double rtol = 1e-12;
        double atol = 1e-12;
        double max_step = std::numeric_limits<double>::infinity();
        // endpoint predicate: a proposed step landing outside is rejected
        std::function<bool(const State&)> domain_ok;
    };

    Dopri5(Rhs rhs, Options opt) : rhs_(std::move(rhs)), opt_(opt) {
        if (opt_.max_step <= 0.0) opt_.max_step = std::numeric_limits<double>::infinity();
    }

    void start(double t0, const State& y0) {
        t_ = t0;
        y_ = y0;
        rhs_(t_, y_, f_);
        h_ = initial_step();
        steps_ = rejections_ = 0;
    }

    double t() const { return t_; }
    const State& y() const { return y_; }
    long accepted_steps() const { return steps_; }
    long rejected_steps() const { return rejections_; }

    /// Take one accepted step with endpoint <= t_limit.  Returns false (with
    /// a diagnostic) when the step size underflows, which happens when the
    /// flow leaves the admissible domain.
    bool step_to(double t_limit, std::string* diagnostic = nullptr) {
        const double span = t_limit - t_;
        if (span <= step_floor()) {  // already there up to roundoff
            t_ = std::max(t_, t_limit);
            return true;
        }
        for (int attempt = 0; attempt < 1000; ++attempt) {
            const double h = std::min({h_, span, opt_.max_step});
            if (h < step_floor()) {
                if (diagnostic)
                    *diagnostic = "step size underflow at t = " + std::to_string(t_) +
                                  " (domain boundary reached)";
                return false;
            }
            const double err = attempt_step(h);
            const bool domain_bad =
                !std::isfinite(err) || (opt_.domain_ok && !opt_.domain_ok(y_try_));
            if (err <= 1.0 && !domain_bad) {
                build_dense(h);
                t_old_ = t_;
                t_ += h;
                y_ = y_try_;
                f_ = k_[6];  // FSAL
                ++steps_;
                const double grow = err == 0.0 ? 10.0 : 0.9 * std::pow(err, -0.2);
                h_ = h * std::clamp(grow, 0.2, 10.0);
                return true;
            }
            ++rejections_;
            h_ = domain_bad ? 0.5 * h
                            : h * std::clamp(0.9 * std::pow(err, -0.2), 0.2, 0.9);
        }
        if (diagnostic) *diagnostic = "too many consecutive step rejections";
        return false;
    }

    /// Dense evaluation at time inside the last accepted step [t_old, t].
    State dense(double time) const {
        const double h = t_ - t_old_;
        const double theta = h == 0.0 ? 0.0 : (time - t_old_) / h;
        const double th1 = 1.0 - theta;
        State out;
        for (std::size_t i = 0; i < N; ++i)
            out[i] = rcont_[0][i] +
                     theta * (rcont_[1][i] +
                              th1 * (rcont_[2][i] +
                                     theta * (rcont_[3][i] + th1 * rcont_[4][i])));
        return out;
    }

    double t_old() const { return t_old_; }

private:
    static constexpr double c_[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
    static constexpr double a_[7][6] = {
        {},
        {1.0 / 5},
        {3.0 / 40, 9.0 / 40},
        {44.0 / 45, -56.0 / 15, 32.0 / 9},
        {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
        {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
        {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
    // y5 - y4 error weights
    static constexpr double e_[7] = {71.0 / 57600,   0.0,        -71.0 / 16695, 71.0 / 1920,
                                     -17253.0 / 339200, 22.0 / 525, -1.0 / 40};
    // continuous-extension weights
    static constexpr double d_[7] = {-12715105075.0 / 11282082432.0,
                                     0.0,
                                     87487479700.0 / 32700410799.0,
                                     -10690763975.0 / 1880347072.0,
                                     701980252875.0 / 199316789632.0,
                                     -1453857185.0 / 822651844.0,
                                     69997945.0 / 29380423.0};

    double step_floor() const {
        return 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t_));
    }

    double initial_step() const {
        double dy = 0.0, df = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sc = opt_.atol + opt_.rtol * std::abs(y_[i]);
            dy = std::max(dy, std::abs(y_[i]) / sc);
            df = std::max(df, std::abs(f_[i]) / sc);
        }
        const double h0 = (df < 1e-10 || dy < 1e-10) ? 1e-6 : 0.01 * dy / df;
        return std::min(h0, opt_.max_step);
    }

    // Returns the scaled RMS error of a trial step of size h; fills y_try_ and k_.
    double attempt_step(double h) {
        k_[0] = f_;
        State ytmp;
        for (std::size_t stage = 1; stage < 7; ++stage) {
            for (std::size_t i = 0; i < N; ++i) {
                double acc = 0.0;
                for (std::size_t j = 0; j < stage; ++j) acc += a_[stage][j] * k_[j][i];
                ytmp[i] = y_[i] + h * acc;
            }
            rhs_(t_ + c_[stage] * h, ytmp, k_[stage]);
        }
        y_try_ = ytmp;  // stage 7 evaluates at the 5th-order solution
        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            double ei = 0.0;
            for (std::size_t j = 0; j < 7; ++j) ei += e_[j] * k_[j][i];
            const double sc =
                opt_.atol + opt_.rtol * std::max(std::abs(y_[i]), std::abs(y_try_[i]));
            const double q = h * ei / sc;
            err += q * q;
        }
        return std::sqrt(err / static_cast<double>(N));
    }

    void build_dense(double h) {
        for (std::size_t i = 0; i < N; ++i) {
            const double ydiff = y_try_[i] - y_[i];
            const double bspl = h * k_[0][i] - ydiff;
            rcont_[0][i] = y_[i];
            rcont_[1][i] = ydiff;
            rcont_[2][i] = bspl;
            rcont_[3][i] = ydiff - h * k_[6][i] - bspl;
            double acc = 0.0;
            for (std::size_t j = 0; j < 7; ++j) acc += d_[j] * k_[j][i];
            rcont_[4][i] = h * acc;
        }
    }

    Rhs rhs_;
    Options opt_;
    double t_ = 0.0, t_old_ = 0.0, h_ = 0.0;
    State y_{}, y_try_{}, f_{};
    std::array<State, 7> k_{};
    std::array<State, 5> rcont_{};
    long steps_ = 0, rejections_ = 0;
};

}  // namespace keplergeo

#endif
