// Copyright 2026 The ubases Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ubases/errors.hpp"

namespace ubases {

/// Raw grid as read from user input; grid[j][k] is the symbol in row j, column k.
using LatinGrid = std::vector<std::vector<int>>;

/// Permutation of {0..d-1}, given as the image list p[0], p[1], ...
using Permutation = std::vector<std::size_t>;

inline bool is_permutation_of(const Permutation &p, std::size_t d) {
    if (p.size() != d) {
        return false;
    }
    std::vector<bool> seen(d, false);
    for (auto v : p) {
        if (v >= d || seen[v]) {
            return false;
        }
        seen[v] = true;
    }
    return true;
}

inline void require_permutation(const Permutation &p, std::size_t d, const std::string &name) {
    if (!is_permutation_of(p, d)) {
        throw BadPermutation(name + " is not a permutation of {0.." + std::to_string(d) + "-1}");
    }
}

inline Permutation identity_permutation(std::size_t d) {
    Permutation p(d);
    for (std::size_t k = 0; k < d; k++) {
        p[k] = k;
    }
    return p;
}

struct LatinViolation {
    enum class Line { row, column };
    Line line;
    std::size_t index;

    std::string describe() const {
        return (line == Line::row ? "row " : "column ") + std::to_string(index);
    }
};

struct LatinCheck {
    bool pass = true;
    std::optional<LatinViolation> violation;

    explicit operator bool() const {
        return pass;
    }
};

/// Rows are scanned before columns; the first repeated symbol wins.
inline LatinCheck validate_latin(const LatinGrid &grid) {
    const std::size_t d = grid.size();
    for (const auto &row : grid) {
        if (row.size() != d) {
            throw DimensionMismatch("latin grid is not square");
        }
        for (int s : row) {
            if (s < 0 || static_cast<std::size_t>(s) >= d) {
                throw SymbolOutOfRange("symbol " + std::to_string(s) + " outside {0.." + std::to_string(d) + "-1}");
            }
        }
    }
    for (std::size_t j = 0; j < d; j++) {
        std::vector<bool> seen(d, false);
        for (std::size_t k = 0; k < d; k++) {
            auto s = static_cast<std::size_t>(grid[j][k]);
            if (seen[s]) {
                return {false, LatinViolation{LatinViolation::Line::row, j}};
            }
            seen[s] = true;
        }
    }
    for (std::size_t k = 0; k < d; k++) {
        std::vector<bool> seen(d, false);
        for (std::size_t j = 0; j < d; j++) {
            auto s = static_cast<std::size_t>(grid[j][k]);
            if (seen[s]) {
                return {false, LatinViolation{LatinViolation::Line::column, k}};
            }
            seen[s] = true;
        }
    }
    return {};
}

/// A validated Latin square. Entry (j,k) is lambda(j,k); the row index j is
/// the one that also selects the Hadamard matrix in a shift-and-multiply basis.
class LatinSquare {
  public:
    explicit LatinSquare(const LatinGrid &grid) {
        auto check = validate_latin(grid);
        if (!check) {
            throw DesignInvalid("not a Latin square: repeated symbol in " + check.violation->describe());
        }
        d_ = grid.size();
        cells_.reserve(d_ * d_);
        for (const auto &row : grid) {
            for (int s : row) {
                cells_.push_back(static_cast<std::size_t>(s));
            }
        }
    }

    std::size_t d() const {
        return d_;
    }
    std::size_t operator()(std::size_t j, std::size_t k) const {
        return cells_[j * d_ + k];
    }

    LatinGrid grid() const {
        LatinGrid g(d_, std::vector<int>(d_));
        for (std::size_t j = 0; j < d_; j++) {
            for (std::size_t k = 0; k < d_; k++) {
                g[j][k] = static_cast<int>((*this)(j, k));
            }
        }
        return g;
    }

    bool operator==(const LatinSquare &) const = default;

  private:
    std::size_t d_ = 0;
    std::vector<std::size_t> cells_;
};

/// Addition table of Z_d: lambda(j,k) = (j+k) mod d.
inline LatinSquare latin_from_cyclic(std::size_t d) {
    LatinGrid g(d, std::vector<int>(d));
    for (std::size_t j = 0; j < d; j++) {
        for (std::size_t k = 0; k < d; k++) {
            g[j][k] = static_cast<int>((j + k) % d);
        }
    }
    return LatinSquare(g);
}

/// Isotopy move: result(j,k) = r(lambda(p(j), q(k))).
inline LatinSquare latin_equivalence_apply(const LatinSquare &sq, const Permutation &p, const Permutation &q,
                                           const Permutation &r) {
    const std::size_t d = sq.d();
    require_permutation(p, d, "row permutation");
    require_permutation(q, d, "column permutation");
    require_permutation(r, d, "symbol permutation");
    LatinGrid g(d, std::vector<int>(d));
    for (std::size_t j = 0; j < d; j++) {
        for (std::size_t k = 0; k < d; k++) {
            g[j][k] = static_cast<int>(r[sq(p[j], q[k])]);
        }
    }
    return LatinSquare(g);
}

/// Direct product square on d1*d2 symbols, composite indices first-factor slowest.
inline LatinSquare tensor_latin(const LatinSquare &a, const LatinSquare &b) {
    const std::size_t d1 = a.d();
    const std::size_t d2 = b.d();
    const std::size_t d = d1 * d2;
    LatinGrid g(d, std::vector<int>(d));
    for (std::size_t j = 0; j < d; j++) {
        for (std::size_t k = 0; k < d; k++) {
            g[j][k] = static_cast<int>(a(j / d2, k / d2) * d2 + b(j % d2, k % d2));
        }
    }
    return LatinSquare(g);
}

inline constexpr std::size_t kMaxLatinCountDimension = 5;

namespace detail {

struct NormalizedLatinCounter {
    std::size_t d;
    std::vector<std::uint32_t> row_used;
    std::vector<std::uint32_t> col_used;

    std::uint64_t fill(std::size_t cell) {
        const std::size_t inner = d - 1;
        if (cell == inner * inner) {
            return 1;
        }
        const std::size_t j = 1 + cell / inner;
        const std::size_t k = 1 + cell % inner;
        std::uint64_t total = 0;
        std::uint32_t free = ~(row_used[j] | col_used[k]) & ((1u << d) - 1);
        while (free != 0) {
            std::uint32_t bit = free & (~free + 1);
            free ^= bit;
            row_used[j] |= bit;
            col_used[k] |= bit;
            total += fill(cell + 1);
            row_used[j] ^= bit;
            col_used[k] ^= bit;
        }
        return total;
    }
};

}  // namespace detail

/// Number of d x d Latin squares whose first row and first column read 0..d-1.
/// Depth-first backtracking with row and column bitmasks.
inline std::uint64_t count_normalized_latin(std::size_t d) {
    if (d > kMaxLatinCountDimension) {
        throw DimensionTooLarge("normalized Latin square counting is limited to d <= " +
                                std::to_string(kMaxLatinCountDimension) + " (got " + std::to_string(d) +
                                "); already at d = 10 there are about 7.5e24 of them");
    }
    if (d <= 1) {
        return d;
    }
    detail::NormalizedLatinCounter c{d, std::vector<std::uint32_t>(d, 0), std::vector<std::uint32_t>(d, 0)};
    for (std::size_t k = 0; k < d; k++) {
        c.row_used[0] |= 1u << k;
        c.col_used[k] |= 1u << k;
        c.row_used[k] |= 1u << k;
        c.col_used[0] |= 1u << k;
    }
    return c.fill(0);
}

}  // namespace ubases
