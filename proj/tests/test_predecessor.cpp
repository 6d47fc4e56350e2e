#include "sca5/predecessor.hpp"

#include "sca5/components.hpp"
#include "sca5/slice.hpp"
#include "sca5/transitions.hpp"
#include "worked_examples.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

using namespace sca5;

namespace {

std::set<std::string> witness_strings(const Ring& x) {
    std::set<std::string> out;
    for (const auto& w : predecessor_enumerate(x)) out.insert(w.pred.to_string());
    return out;
}

int segments_of_kind(const BracketDecomposition& dec, SegmentKind kind) {
    int n = 0;
    for (const auto& seg : dec.segments) n += seg.kind == kind;
    return n;
}

}  // namespace

TEST_CASE("decomposition of the 49-site example") {
    const Ring x = Ring::from_string(worked::pred49_configuration);
    const BracketDecomposition dec = bracket_decompose(x);

    CHECK(segments_of_kind(dec, SegmentKind::brace) == 1);
    CHECK(segments_of_kind(dec, SegmentKind::double_bracket) == 2);
    CHECK(segments_of_kind(dec, SegmentKind::angle) == 2);

    // segment layout: one angle [01] at 1, the brace with three pairs at 3,
    // a double bracket at 13 (choice) and one at 30 (forced), a two-pair
    // angle at 35; everything else is outside
    std::map<int, Segment> by_start;
    for (const auto& seg : dec.segments) by_start[seg.start] = seg;
    REQUIRE(by_start.count(1));
    CHECK(by_start[1].kind == SegmentKind::angle);
    CHECK(by_start[1].pairs == 1);
    CHECK(by_start[1].choice);
    REQUIRE(by_start.count(3));
    CHECK(by_start[3].kind == SegmentKind::brace);
    CHECK(by_start[3].pairs == 3);
    CHECK(by_start[3].length == 10);
    CHECK(by_start[3].choice);
    REQUIRE(by_start.count(13));
    CHECK(by_start[13].kind == SegmentKind::double_bracket);
    CHECK(by_start[13].choice);
    REQUIRE(by_start.count(30));
    CHECK(by_start[30].kind == SegmentKind::double_bracket);
    CHECK_FALSE(by_start[30].choice);
    REQUIRE(by_start.count(35));
    CHECK(by_start[35].kind == SegmentKind::angle);
    CHECK(by_start[35].pairs == 2);
    CHECK(by_start[35].choice);

    CHECK(dec.choice_count() == 4);
    // concatenation covers the ring exactly once
    std::vector<char> covered(49, 0);
    for (const auto& seg : dec.segments)
        for (int d = 0; d < seg.length; ++d) {
            CHECK(!covered[std::size_t((seg.start + d) % 49)]);
            covered[std::size_t((seg.start + d) % 49)] = 1;
        }
    CHECK(std::count(covered.begin(), covered.end(), 1) == 49);
}

TEST_CASE("the 49-site example has exactly sixteen predecessors") {
    const Ring x = Ring::from_string(worked::pred49_configuration);
    const auto witnesses = predecessor_enumerate(x);
    CHECK(witnesses.size() == 16);
    CHECK(witness_strings(x).count(worked::pred49_kept_predecessor) == 1);

    // every witness reaches x through at least one firing mask, with the
    // bookkeeping fire count
    for (const auto& w : witnesses) {
        bool found = false;
        for (const auto& e : successors(w.pred).edges)
            if (e.target == x) {
                found = true;
                CHECK(e.ell == w.ell);
            }
        CHECK(found);
    }
}

TEST_CASE("choice counts track the pattern census") {
    const Ring x = Ring::from_string(worked::pred49_configuration);
    const BracketDecomposition dec = bracket_decompose(x);
    CHECK(dec.dbracket_choices == count_pattern_wrapping(x, "110111"));
    CHECK(dec.brace_choices + dec.angle_choices ==
          count_pattern_wrapping(x, "00111") + count_pattern_wrapping(x, "010111"));
}

TEST_CASE("frozen and trivial configurations") {
    // no isolated particles and no 111 block: the state is its own unique predecessor
    const Ring frozen = Ring::from_string("0110011000");
    const auto w = predecessor_enumerate(frozen);
    REQUIRE(w.size() == 1);
    CHECK(w.front().pred == frozen);
    CHECK(w.front().ell == 0);

    const Ring zeros = Ring::zeros(12);
    REQUIRE(predecessor_enumerate(zeros).size() == 1);
    const auto report = verify_balance_identity(zeros, NoiseParam{Rational(1, 3)});
    CHECK(report.equal);
    CHECK(report.lhs == 1);
    CHECK(report.rhs == 1);
}

TEST_CASE("single outside segment when nothing can move") {
    const BracketDecomposition dec = bracket_decompose(Ring::from_string("011000"));
    REQUIRE(dec.segments.size() == 1);
    CHECK(dec.segments.front().kind == SegmentKind::outside);
    CHECK(dec.segments.front().length == 6);
    CHECK(dec.choice_count() == 0);
}

TEST_CASE("a block head pairs across the seam") {
    // cyclically 111000 reads ...0|111..., so the leading particle forms an
    // 01 pair with the wrap-around zero and one optional predecessor exists
    const Ring x = Ring::from_string("111000");
    const BracketDecomposition dec = bracket_decompose(x);
    REQUIRE(dec.segments.size() == 2);
    CHECK(segments_of_kind(dec, SegmentKind::angle) == 1);
    CHECK(segments_of_kind(dec, SegmentKind::outside) == 1);
    CHECK(dec.choice_count() == 1);
    CHECK(witness_strings(x) == std::set<std::string>{"111000", "011001"});
}

TEST_CASE("fully cyclic decompositions") {
    SECTION("alternating ring is a single wrapped angle with one predecessor") {
        const Ring x = Ring::from_string("01010101");
        const BracketDecomposition dec = bracket_decompose(x);
        REQUIRE(dec.segments.size() == 1);
        CHECK(dec.segments.front().kind == SegmentKind::angle);
        CHECK(dec.segments.front().pairs == 4);
        CHECK(dec.choice_count() == 0);
        const auto w = predecessor_enumerate(x);
        REQUIRE(w.size() == 1);
        CHECK(w.front().pred.to_string() == "10101010");
    }

    SECTION("a brace filling the whole ring") {
        const Ring x = Ring::from_string("110101");
        const BracketDecomposition dec = bracket_decompose(x);
        REQUIRE(dec.segments.size() == 1);
        CHECK(dec.segments.front().kind == SegmentKind::brace);
        CHECK(dec.segments.front().choice);
        CHECK(witness_strings(x) == std::set<std::string>{"111010", "111001"});
    }

    SECTION("double brackets chained around the ring") {
        const Ring x = Ring::from_string("11011101");
        const BracketDecomposition dec = bracket_decompose(x);
        CHECK(segments_of_kind(dec, SegmentKind::double_bracket) == 2);
        CHECK(dec.choice_count() == 2);
        CHECK(predecessor_enumerate(x).size() == 4);
    }
}

TEST_CASE("witness sets equal brute force on small slices") {
    for (int L = 4; L <= 8; ++L)
        for (int n1 = 0; n1 <= L; ++n1)
            for (int n110 = 0; 3 * n110 <= L; ++n110) {
                const Slice slice = enumerate_slice(L, n1, n110);
                if (slice.empty()) continue;
                std::map<Ring, std::set<Ring>> reverse;
                for (const Ring& s : slice.members)
                    for (const auto& e : successors(s).edges) reverse[e.target].insert(s);
                for (const Component& comp : decompose(slice, Mode::raw)) {
                    if (!comp.recurrent) continue;
                    for (const Ring& x : comp.members) {
                        std::set<Ring> mine;
                        for (const auto& w : predecessor_enumerate(x)) mine.insert(w.pred);
                        REQUIRE(mine == reverse[x]);
                    }
                }
            }
}

TEST_CASE("census binomials on the 49-site example") {
    const Ring x = Ring::from_string(worked::pred49_configuration);
    const auto census = lemma_census(x);
    long total = 0;
    const long n_dbl = count_pattern_wrapping(x, "110111");
    const long n_ang = count_pattern_wrapping(x, "00111") + count_pattern_wrapping(x, "010111");
    for (const auto& [key, count] : census) {
        CHECK(Int(count) == binomial(n_dbl, key.first) * binomial(n_ang, key.second));
        total += count;
    }
    CHECK(total == 16);
}

TEST_CASE("balance identity on the worked members") {
    for (const auto& members : {worked::omega1_members, worked::omega2_members})
        for (const std::string& s : members)
            for (const Rational& a : {Rational(1, 2), Rational(7, 10)}) {
                const auto report = verify_balance_identity(Ring::from_string(s), NoiseParam{a});
                CHECK(report.equal);
                CHECK(report.telescoping_ok);
            }
    const auto big = verify_balance_identity(Ring::from_string(worked::pred49_configuration),
                                             NoiseParam{Rational(1, 2)});
    CHECK(big.equal);
    CHECK(big.telescoping_ok);
}

TEST_CASE("balance identity requires interior alpha") {
    CHECK_THROWS_AS(verify_balance_identity(Ring::zeros(8), NoiseParam{Rational(1)}),
                    std::invalid_argument);
}
