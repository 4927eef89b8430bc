#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "msnet/centrality.hpp"

using namespace msnet;
using test::make_stream;

namespace {

bool close_rel(double a, double b, double rel = 1e-9) {
    return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-12});
}

}  // namespace

TEST_CASE("katz: single contact scores beta at the destination") {
    KatzState state(3, 0.5, 0.0);
    state.update({0, 1, 10});
    CHECK(state.query(1, 10) == 0.5);
    CHECK(state.query(0, 10) == 0.0);
    CHECK(state.query(2, 10) == 0.0);
}

TEST_CASE("katz: two-hop walk accumulates, c=0") {
    // walks ending at w: (v,w) = 0.5 and (u,v,w) = 0.25
    KatzState state(3, 0.5, 0.0);
    state.update({0, 1, 0});
    state.update({1, 2, 1});
    CHECK(state.query(2, 1) == 0.75);
    const Vector oracle = katz_oracle(make_stream(3, {{0, 1, 0}, {1, 2, 1}}), 0.5, 0.0, 1);
    CHECK(close_rel(state.query(2, 1), oracle(2)));
}

TEST_CASE("katz: two-hop walk with decay c=ln2") {
    const double c = std::log(2.0);
    KatzState state(3, 0.5, c);
    state.update({0, 1, 0});
    state.update({1, 2, 1});
    // beta * (1 + s_u * exp(-c)) = 0.5 * (1 + 0.5 * 0.5) = 0.625
    CHECK(state.query(2, 1) == doctest::Approx(0.625).epsilon(1e-12));
    const Vector oracle = katz_oracle(make_stream(3, {{0, 1, 0}, {1, 2, 1}}), 0.5, c, 1);
    CHECK(close_rel(state.query(2, 1), oracle(2)));
}

TEST_CASE("katz query: empty state, no decay, pure decay") {
    KatzState empty(4, 0.5, 0.0);
    for (NodeId v = 0; v < 4; ++v) CHECK(empty.query(v, 100) == 0.0);

    KatzState no_decay(2, 1.0, 0.0);
    no_decay.update({0, 1, 0});  // score 1.0 at t=0
    CHECK(no_decay.query(1, 100) == 1.0);

    const double c = -std::log(0.5) / 100.0;  // exp(-c*100) = 0.5
    KatzState half(2, 1.0, c);
    half.update({0, 1, 0});
    CHECK(half.query(1, 100) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("katz: monotonicity violations are rejected") {
    KatzState state(3, 0.5, 0.0);
    state.update({0, 1, 10});
    CHECK_THROWS_AS(state.update({1, 2, 9}), std::invalid_argument);
    CHECK_THROWS_AS(state.query(0, 9), std::invalid_argument);
}

TEST_CASE("katz oracle: empty and single-contact streams") {
    const Vector empty = katz_oracle(make_stream(3, {}), 0.5, 0.0, 10);
    CHECK(empty.cwiseAbs().sum() == 0.0);

    const Vector one = katz_oracle(make_stream(3, {{0, 2, 4}}), 0.25, 0.1, 9);
    CHECK(one(0) == 0.0);
    CHECK(one(1) == 0.0);
    CHECK(one(2) == doctest::Approx(0.25 * std::exp(-0.1 * 5)).epsilon(1e-12));
}

TEST_CASE("katz oracle refuses oversized streams") {
    Rng rng(2);
    auto stream = test::random_stream(rng, 4, 15, 20);
    CHECK_THROWS_AS(katz_oracle(stream, 0.5, 0.0, 100, 14), std::invalid_argument);
}

TEST_CASE("katz: equal timestamps do not chain (strictly increasing walks)") {
    // u->v and v->w at the same instant: no two-hop walk.
    auto stream = make_stream(3, {{0, 1, 5}, {1, 2, 5}});
    const Vector oracle = katz_oracle(stream, 0.5, 0.0, 5);
    CHECK(oracle(2) == 0.5);
    const Vector streamed = katz_scores(stream, 0.5, 0.0, 5);
    CHECK(close_rel(streamed(2), oracle(2)));
    CHECK(close_rel(streamed(1), oracle(1)));
}

TEST_CASE("katz: streaming equals the walk oracle on random streams") {
    Rng rng(17);
    const double betas[] = {0.25, 0.5, 1.0};
    const double cs[] = {0.0, 0.1};
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + rng.next_int(5);
        const int len = 1 + rng.next_int(12);
        auto stream = test::random_stream(rng, n, len, 12);
        const double beta = betas[rng.next_int(3)];
        const double c = cs[rng.next_int(2)];
        const Timestamp at_t = stream.empty() ? 0 : stream.t_max() + rng.next_int(3);
        const Vector expected = katz_oracle(stream, beta, c, at_t);
        const Vector got = katz_scores(stream, beta, c, at_t);
        for (int v = 0; v < n; ++v) CHECK(close_rel(got(v), expected(v)));
    }
}

TEST_CASE("katz: weights multiply beta") {
    auto stream = make_stream(3, {{0, 1, 0, 2.0}, {1, 2, 3, 1.5}});
    const double beta = 0.5;
    // walks to 2: (1->2) = beta*1.5; (0->1->2) = beta*2 * beta*1.5
    const double want = beta * 1.5 + (beta * 2.0) * (beta * 1.5);
    CHECK(katz_scores(stream, beta, 0.0, 3)(2) == doctest::Approx(want).epsilon(1e-12));
    const Vector oracle = katz_oracle(stream, beta, 0.0, 3);
    CHECK(close_rel(oracle(2), want));
}

TEST_CASE("katz: duplicate contacts at one timestamp both count") {
    auto stream = make_stream(2, {{0, 1, 4}, {0, 1, 4}});
    const Vector got = katz_scores(stream, 0.5, 0.0, 4);
    CHECK(got(1) == 1.0);  // two single-edge walks
    const Vector oracle = katz_oracle(stream, 0.5, 0.0, 4);
    CHECK(close_rel(got(1), oracle(1)));
}
