#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace stark::pt {

/// Parabolic quantum numbers (n1, n2, m) of a hydrogen Stark state.
///
/// Reports use the ket form |n q m> with n = n1 + n2 + |m| + 1 and q = n1 - n2,
/// so |2 -1 0> is (0,1,0), |2 1 0> is (1,0,0) and |2 0 1> is (0,0,1). This is
/// the only place that conversion lives.
struct StateLabel {
    int n1 = 0;
    int n2 = 0;
    int m = 0;

    StateLabel() = default;
    StateLabel(int n1_, int n2_, int m_) : n1(n1_), n2(n2_), m(m_) {
        if (n1 < 0 || n2 < 0) {
            throw std::invalid_argument("parabolic quantum numbers must be non-negative, got (" + std::to_string(n1) +
                                        "," + std::to_string(n2) + "," + std::to_string(m) + ")");
        }
    }

    static StateLabel from_ket(int n, int q, int m) {
        const int rest = n - std::abs(m) - 1;
        if (n < 1 || rest < 0 || std::abs(q) > rest || (rest + q) % 2 != 0) {
            throw std::invalid_argument("no parabolic state |" + std::to_string(n) + " " + std::to_string(q) + " " +
                                        std::to_string(m) + ">");
        }
        return StateLabel((rest + q) / 2, (rest - q) / 2, m);
    }

    int abs_m() const { return std::abs(m); }
    int n() const { return n1 + n2 + abs_m() + 1; }
    int q() const { return n1 - n2; }

    /// "|n q m>" with single spaces, e.g. "|2 -1 0>".
    std::string ket() const {
        return "|" + std::to_string(n()) + " " + std::to_string(q()) + " " + std::to_string(m) + ">";
    }

    friend bool operator==(const StateLabel&, const StateLabel&) = default;
};

}  // namespace stark::pt
