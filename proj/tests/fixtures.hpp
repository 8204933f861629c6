#pragma once

#include <vector>

#include "coxgrow/coxmatrix.hpp"

namespace coxgrow::testing {

// <a,b,c> triangle system: labels between the three pairs.
inline CoxeterMatrix triangle(Label a, Label b, Label c) {
    return CoxeterMatrix::from_upper_triangle(3, {a, b, c});
}

// Simply-laced tree T(2,3,7): a 9-vertex path v0..v8 with v9 attached to v2.
inline CoxeterMatrix e10() {
    std::vector<Label> u;
    auto lab = [](int i, int j) -> Label {
        if (j - i == 1 && j <= 8) return 3;
        if (i == 2 && j == 9) return 3;
        return 2;
    };
    for (int i = 0; i < 10; ++i)
        for (int j = i + 1; j < 10; ++j) u.push_back(lab(i, j));
    return CoxeterMatrix::from_upper_triangle(10, u);
}

inline CoxeterMatrix path(std::vector<Label> edge_labels) {
    int n = static_cast<int>(edge_labels.size()) + 1;
    std::vector<Label> u;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) u.push_back(j - i == 1 ? edge_labels[i] : 2);
    return CoxeterMatrix::from_upper_triangle(n, u);
}

// The rank-7 mutation example matrix.
inline CoxeterMatrix fig1() {
    const Label I = label_infinity;
    return CoxeterMatrix(7, {
        1, 3, 3, 2, 3, 4, 2,
        3, 1, 3, 2, 3, 4, 2,
        3, 3, 1, 2, 2, 4, 3,
        2, 2, 2, 1, 3, 3, 2,
        3, 3, 2, 3, 1, 2, I,
        4, 4, 4, 3, 2, 1, 3,
        2, 2, 3, 2, I, 3, 1,
    });
}

// The rank-5 system whose elementary reduction changes the growth rate.
inline CoxeterMatrix reduction_m() {
    const Label I = label_infinity;
    return CoxeterMatrix(5, {
        1, 3, 2, 3, I,
        3, 1, 2, 2, 2,
        2, 2, 1, 3, 2,
        3, 2, 3, 1, 4,
        I, 2, 2, 4, 1,
    });
}

// The rank-6 Coxeter generating system of the same group.
inline CoxeterMatrix reduction_m_prime() {
    const Label I = label_infinity;
    return CoxeterMatrix(6, {
        1, 3, 2, 3, I, I,
        3, 1, 2, 2, 2, 2,
        2, 2, 1, 3, 3, 2,
        3, 2, 3, 1, 2, 2,
        I, 2, 3, 2, 1, 2,
        I, 2, 2, 2, 2, 1,
    });
}

}  // namespace coxgrow::testing
