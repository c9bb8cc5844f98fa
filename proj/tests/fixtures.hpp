#pragma once

// gtest helpers over the shared models.

#include <gtest/gtest.h>

#include "models.hpp"

namespace fx {

inline Errc code_of(auto&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return Errc::AssertionFailed;
}

/// Checks the decomposition invariants: sum to 1, orthogonal, idempotent,
/// ideal dimensions add up to dim A.
inline void expect_complete_decomposition(const Algebra& A, const std::vector<IdempotentRecord>& es)
{
    Element sum = Element::zero(A.dim());
    std::size_t dims = 0;
    for (std::size_t i = 0; i < es.size(); ++i) {
        const auto& e = es[i].element;
        EXPECT_EQ(A.mul(e, e), e);
        EXPECT_EQ(ideal_dim(A, e), es[i].ideal_dimension);
        EXPECT_EQ(es[i].verified_field_unit, es[i].ideal_dimension == 1);
        for (std::size_t j = i + 1; j < es.size(); ++j)
            EXPECT_TRUE(A.mul(e, es[j].element).is_zero());
        sum = sum + e;
        dims += es[i].ideal_dimension;
    }
    EXPECT_EQ(sum, A.unit());
    EXPECT_EQ(dims, A.dim());
}

} // namespace fx
