#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace tstyle::autodiff {

/**
 * Minimal reverse-mode tape. Each recorded node keeps at most two parents
 * together with the local partial derivatives evaluated during the forward
 * pass, so a single reverse sweep accumulates exact adjoints. Constants
 * never become nodes; they fold into the partials.
 */
class Tape {
public:
    struct Node {
        std::int32_t p1;
        std::int32_t p2;
        double w1;
        double w2;
    };

    std::int32_t leaf() {
        nodes_.push_back({-1, -1, 0.0, 0.0});
        return static_cast<std::int32_t>(nodes_.size() - 1);
    }

    std::int32_t unary(std::int32_t p, double w) {
        nodes_.push_back({p, -1, w, 0.0});
        return static_cast<std::int32_t>(nodes_.size() - 1);
    }

    std::int32_t binary(std::int32_t p1, double w1, std::int32_t p2, double w2) {
        nodes_.push_back({p1, p2, w1, w2});
        return static_cast<std::int32_t>(nodes_.size() - 1);
    }

    void clear() { nodes_.clear(); }
    std::size_t size() const { return nodes_.size(); }

    /// Adjoints of every node with respect to the given output node.
    std::vector<double> reverse(std::int32_t output) const {
        std::vector<double> adj(nodes_.size(), 0.0);
        adj[static_cast<std::size_t>(output)] = 1.0;
        for (std::int32_t i = output; i >= 0; --i) {
            const double a = adj[static_cast<std::size_t>(i)];
            if (a == 0.0) continue;
            const Node& n = nodes_[static_cast<std::size_t>(i)];
            if (n.p1 >= 0) adj[static_cast<std::size_t>(n.p1)] += a * n.w1;
            if (n.p2 >= 0) adj[static_cast<std::size_t>(n.p2)] += a * n.w2;
        }
        return adj;
    }

private:
    std::vector<Node> nodes_;
};

/// A value recorded on a tape. Copies are cheap handles.
class Var {
public:
    Var() = default;
    Var(Tape& tape, double value, std::int32_t index)
        : tape_(&tape), value_(value), index_(index) {}

    static Var input(Tape& tape, double value) { return {tape, value, tape.leaf()}; }

    double value() const { return value_; }
    std::int32_t index() const { return index_; }
    Tape& tape() const { return *tape_; }

private:
    Tape* tape_ = nullptr;
    double value_ = 0.0;
    std::int32_t index_ = -1;
};

inline Var operator+(Var a, Var b) {
    return {a.tape(), a.value() + b.value(),
            a.tape().binary(a.index(), 1.0, b.index(), 1.0)};
}
inline Var operator-(Var a, Var b) {
    return {a.tape(), a.value() - b.value(),
            a.tape().binary(a.index(), 1.0, b.index(), -1.0)};
}
inline Var operator*(Var a, Var b) {
    return {a.tape(), a.value() * b.value(),
            a.tape().binary(a.index(), b.value(), b.index(), a.value())};
}
inline Var operator/(Var a, Var b) {
    const double inv = 1.0 / b.value();
    return {a.tape(), a.value() * inv,
            a.tape().binary(a.index(), inv, b.index(), -a.value() * inv * inv)};
}

inline Var operator+(Var a, double c) {
    return {a.tape(), a.value() + c, a.tape().unary(a.index(), 1.0)};
}
inline Var operator+(double c, Var a) { return a + c; }
inline Var operator-(Var a, double c) { return a + (-c); }
inline Var operator-(double c, Var a) {
    return {a.tape(), c - a.value(), a.tape().unary(a.index(), -1.0)};
}
inline Var operator*(Var a, double c) {
    return {a.tape(), a.value() * c, a.tape().unary(a.index(), c)};
}
inline Var operator*(double c, Var a) { return a * c; }
inline Var operator/(Var a, double c) { return a * (1.0 / c); }
inline Var operator/(double c, Var a) {
    const double inv = 1.0 / a.value();
    return {a.tape(), c * inv, a.tape().unary(a.index(), -c * inv * inv)};
}
inline Var operator-(Var a) { return a * -1.0; }

inline Var log(Var a) {
    return {a.tape(), std::log(a.value()), a.tape().unary(a.index(), 1.0 / a.value())};
}
inline Var sqrt(Var a) {
    const double s = std::sqrt(a.value());
    return {a.tape(), s, a.tape().unary(a.index(), 0.5 / s)};
}
inline Var square(Var a) {
    return {a.tape(), a.value() * a.value(),
            a.tape().binary(a.index(), a.value(), a.index(), a.value())};
}

/// |x| with d|x|/dx = sign(x) and the subgradient 0 at x = 0.
inline Var abs_sign(Var a) {
    const double v = a.value();
    const double s = (v > 0.0) ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
    return {a.tape(), std::fabs(v), a.tape().unary(a.index(), s)};
}

/// c*x + acc in a single node; the workhorse of linear maps on the tape.
inline Var fma_const(Var x, double c, Var acc) {
    return {x.tape(), c * x.value() + acc.value(),
            x.tape().binary(x.index(), c, acc.index(), 1.0)};
}

inline Var sum(const std::vector<Var>& xs) {
    Var acc = xs[0];
    for (std::size_t i = 1; i < xs.size(); ++i) acc = acc + xs[i];
    return acc;
}

}  // namespace tstyle::autodiff
