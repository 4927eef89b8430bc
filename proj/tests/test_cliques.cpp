#include <doctest.h>

#include <set>
#include <tuple>

#include "helpers.hpp"
#include "msnet/cliques.hpp"

using namespace msnet;
using test::make_stream;

namespace {

using Key = std::tuple<std::vector<NodeId>, Timestamp, Timestamp>;

std::set<Key> as_set(const CliqueReport& report) {
    std::set<Key> out;
    for (const DeltaClique& c : report.cliques) out.insert({c.members, c.b, c.e});
    return out;
}

ContactStream reversed(const ContactStream& stream) {
    std::vector<Contact> contacts;
    for (const Contact& c : stream.contacts()) contacts.push_back({c.dst, c.src, c.t, c.weight});
    return ContactStream::build(stream.registry(), std::move(contacts));
}

}  // namespace

TEST_CASE("delta_cliques: a single contact is its own maximal clique") {
    auto stream = make_stream(3, {{0, 1, 5}});
    const auto report = delta_cliques(stream, 4);
    REQUIRE(report.cliques.size() == 1);
    CHECK(report.cliques[0].members == std::vector<NodeId>{0, 1});
    CHECK(report.cliques[0].b == 5);
    CHECK(report.cliques[0].e == 5);
}

TEST_CASE("delta_cliques: regular pair contacts span one interval") {
    auto stream = make_stream(2, {{0, 1, 0}, {0, 1, 2}, {1, 0, 4}});
    const auto report = delta_cliques(stream, 2);
    REQUIRE(report.cliques.size() == 1);
    CHECK(report.cliques[0].members == std::vector<NodeId>{0, 1});
    CHECK(report.cliques[0].b == 0);
    CHECK(report.cliques[0].e == 4);
    CHECK(as_set(report) == as_set(clique_oracle(stream, 2)));
}

TEST_CASE("delta_cliques: triangle with synchronized contacts") {
    std::vector<Contact> contacts;
    for (Timestamp t : {0, 3, 6}) {
        contacts.push_back({0, 1, t});
        contacts.push_back({0, 2, t});
        contacts.push_back({1, 2, t});
    }
    auto stream = make_stream(3, contacts);
    const auto report = delta_cliques(stream, 3);
    const Key triangle{{0, 1, 2}, 0, 6};
    CHECK(as_set(report).count(triangle) == 1);
    CHECK(as_set(report) == as_set(clique_oracle(stream, 3)));
    // The triangle subsumes its pairs over the same interval.
    for (const DeltaClique& c : report.cliques)
        if (c.members.size() == 2) CHECK(!(c.b == 0 && c.e == 6));
}

TEST_CASE("delta_cliques: empty stream") {
    CHECK(delta_cliques(make_stream(2, {}), 3).cliques.empty());
    CHECK(clique_oracle(make_stream(2, {}), 3).cliques.empty());
    CHECK_THROWS_AS(delta_cliques(make_stream(2, {}), 0), std::invalid_argument);
}

TEST_CASE("delta_cliques: a gap larger than delta splits the interval") {
    auto stream = make_stream(2, {{0, 1, 0}, {0, 1, 10}});
    const auto report = delta_cliques(stream, 3);
    const auto keys = as_set(report);
    CHECK(keys == std::set<Key>{{{0, 1}, 0, 0}, {{0, 1}, 10, 10}});
    CHECK(keys == as_set(clique_oracle(stream, 3)));
}

TEST_CASE("delta_cliques: oracle equality on random instances") {
    Rng rng(101);
    for (int trial = 0; trial < 120; ++trial) {
        const int n = 3 + rng.next_int(5);        // 3..7 nodes
        const int len = 4 + rng.next_int(24);     // 4..27 contacts
        const Timestamp range = 4 + rng.next_int(18);
        auto stream = test::random_stream(rng, n, len, range);
        const Timestamp delta = 1 + rng.next_int(6);
        const auto fast = delta_cliques(stream, delta);
        const auto slow = clique_oracle(stream, delta);
        REQUIRE(as_set(fast) == as_set(slow));
        // report order is the documented one and duplicate-free
        for (std::size_t i = 1; i < fast.cliques.size(); ++i) {
            const auto& a = fast.cliques[i - 1];
            const auto& b = fast.cliques[i];
            const bool ordered =
                a.members.size() > b.members.size() ||
                (a.members.size() == b.members.size() &&
                 (a.e - a.b > b.e - b.b ||
                  (a.e - a.b == b.e - b.b &&
                   (a.members < b.members || (a.members == b.members && a.b < b.b)))));
            CHECK(ordered);
        }
    }
}

TEST_CASE("delta_cliques: growing delta only grows cliques") {
    Rng rng(55);
    for (int trial = 0; trial < 40; ++trial) {
        auto stream = test::random_stream(rng, 5, 16, 20);
        const Timestamp d1 = 1 + rng.next_int(4);
        const Timestamp d2 = d1 + 1 + rng.next_int(4);
        const auto small = delta_cliques(stream, d1);
        const auto big = delta_cliques(stream, d2);
        for (const DeltaClique& c : small.cliques) {
            bool contained = false;
            for (const DeltaClique& super : big.cliques) {
                if (std::includes(super.members.begin(), super.members.end(), c.members.begin(),
                                  c.members.end()) &&
                    super.b <= c.b && c.e <= super.e) {
                    contained = true;
                    break;
                }
            }
            CHECK(contained);
        }
    }
}

TEST_CASE("delta_cliques: direction never matters") {
    Rng rng(77);
    for (int trial = 0; trial < 30; ++trial) {
        auto stream = test::random_stream(rng, 5, 14, 16);
        const Timestamp delta = 1 + rng.next_int(5);
        CHECK(as_set(delta_cliques(stream, delta)) ==
              as_set(delta_cliques(reversed(stream), delta)));
    }
}

TEST_CASE("delta_cliques: max_nodes_hint caps members") {
    std::vector<Contact> contacts;
    for (Timestamp t : {0, 2, 4})
        for (NodeId u = 0; u < 4; ++u)
            for (NodeId v = u + 1; v < 4; ++v) contacts.push_back({u, v, t});
    auto stream = make_stream(4, contacts);
    const auto capped = delta_cliques(stream, 2, 3);
    for (const DeltaClique& c : capped.cliques) CHECK(c.members.size() <= 3);
    const auto full = delta_cliques(stream, 2);
    bool has_four = false;
    for (const DeltaClique& c : full.cliques) has_four = has_four || c.members.size() == 4;
    CHECK(has_four);
}

TEST_CASE("clique_oracle refuses oversized instances") {
    Rng rng(5);
    auto big_nodes = test::random_stream(rng, 9, 10, 10);
    CHECK_THROWS_AS(clique_oracle(big_nodes, 2), std::invalid_argument);
    auto long_stream = test::random_stream(rng, 4, 41, 50);
    CHECK_THROWS_AS(clique_oracle(long_stream, 2), std::invalid_argument);
}
