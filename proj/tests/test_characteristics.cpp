#include "doctest.h"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <stdexcept>

#include "thetakit/characteristics.h"

using namespace thetakit;

namespace {

int brute_weight(const Characteristic& a) {
    int w = 0;
    for (int j = 0; j < a.genus(); ++j) w += a.a_prime(j) * a.a_double_prime(j);
    return w % 2;
}

}  // namespace

TEST_CASE("parity of the smallest characteristics") {
    CHECK(parity(Characteristic(1, {0}, {0})) == Parity::even);
    CHECK(parity(Characteristic(1, {1}, {1})) == Parity::odd);
    CHECK(parity(Characteristic(1, {1}, {0})) == Parity::even);
    CHECK(Characteristic(2, {1, 1}, {1, 0}).is_even() == false);
}

TEST_CASE("bits are reduced mod 2 at construction") {
    const Characteristic a(2, {3, -2}, {2, 5});
    CHECK(a == Characteristic(2, {1, 0}, {0, 1}));
    CHECK_THROWS_AS(Characteristic(2, {1}, {0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(Characteristic(0, {}, {}), std::invalid_argument);
}

TEST_CASE("even and odd counts") {
    for (int g = 1; g <= 3; ++g) {
        const auto even = enumerate(g, ParityFilter::even);
        const auto odd = enumerate(g, ParityFilter::odd);
        const int expected = (1 << (g - 1)) * ((1 << g) + 1);
        CHECK(static_cast<int>(even.size()) == expected);
        CHECK(even_count(g) == expected);
        CHECK(even.size() + odd.size() == (1u << (2 * g)));
        for (const auto& a : even) CHECK(brute_weight(a) == 0);
        for (const auto& a : odd) CHECK(brute_weight(a) == 1);
    }
    CHECK(enumerate(1, ParityFilter::even).size() == 3);
    CHECK(enumerate(2, ParityFilter::even).size() == 10);
    CHECK(enumerate(2, ParityFilter::odd).size() == 6);
    CHECK(enumerate(3, ParityFilter::even).size() == 36);
    CHECK_THROWS_AS(enumerate(4), std::invalid_argument);
}

TEST_CASE("enumeration is lexicographic and index round-trips") {
    for (int g = 1; g <= 3; ++g) {
        const auto all = enumerate(g);
        CHECK(std::is_sorted(all.begin(), all.end()));
        for (std::uint32_t k = 0; k < all.size(); ++k) {
            CHECK(all[k].index() == k);
            CHECK(Characteristic::from_index(g, k) == all[k]);
        }
    }
    CHECK_THROWS_AS(Characteristic::from_index(2, 16), std::invalid_argument);
}

TEST_CASE("genus-2 even set in digit labels") {
    std::vector<std::string> labels;
    for (const auto& a : enumerate(2, ParityFilter::even)) labels.push_back(digit_encode(a));
    CHECK(labels == std::vector<std::string>{"00", "01", "02", "03", "10", "12", "20", "21", "30", "33"});
}

TEST_CASE("digit labels") {
    CHECK(digit_encode(Characteristic(2, {1, 0}, {0, 0})) == "20");
    CHECK(digit_encode(Characteristic(2, {0, 0}, {0, 0})) == "00");
    CHECK(digit_encode(Characteristic(2, {0, 1}, {1, 1})) == "13");
    for (const auto& a : enumerate(2)) CHECK(digit_decode(digit_encode(a)) == a);
    CHECK_THROWS_AS(digit_encode(Characteristic(1, {0}, {0})), std::invalid_argument);
    CHECK_THROWS_AS(digit_decode("40"), std::invalid_argument);
    CHECK_THROWS_AS(digit_decode("1"), std::invalid_argument);
}

TEST_CASE("parsing") {
    CHECK(Characteristic::parse("(1,0;0,1)", 2) == Characteristic(2, {1, 0}, {0, 1}));
    CHECK(Characteristic::parse("21", 2) == Characteristic(2, {1, 0}, {0, 1}));
    CHECK(Characteristic::parse("(1;1)", 1) == Characteristic(1, {1}, {1}));
    CHECK(Characteristic::parse("10", 1) == Characteristic(1, {1}, {0}));
    CHECK(Characteristic::parse("(1,1,0;0,0,1)", 3) == Characteristic(3, {1, 1, 0}, {0, 0, 1}));
    for (const auto& a : enumerate(3)) CHECK(Characteristic::parse(a.to_string(), 3) == a);
    CHECK_THROWS_AS(Characteristic::parse("(1,0;0)", 2), std::invalid_argument);
    CHECK_THROWS_AS(Characteristic::parse("xy", 2), std::invalid_argument);
}

TEST_CASE("pairing is alternating and matches the weight formula") {
    for (int g = 1; g <= 3; ++g) {
        const auto all = enumerate(g);
        for (const auto& a : all) {
            CHECK(pairing(a, a) == 0);
            for (const auto& b : all) {
                CHECK(pairing(a, b) == pairing(b, a));
                CHECK(pairing(a, b) == (brute_weight(a + b) + brute_weight(a) + brute_weight(b)) % 2);
            }
        }
    }
    CHECK_THROWS_AS(pairing(Characteristic(1, {0}, {0}), Characteristic(2, {0, 0}, {0, 0})), std::invalid_argument);
}

TEST_CASE("pairing is bilinear") {
    const auto all = enumerate(2);
    for (const auto& a : all)
        for (const auto& b : all)
            for (const auto& c : all) CHECK(pairing(a + b, c) == (pairing(a, c) + pairing(b, c)) % 2);
}

TEST_CASE("addition is closed, associative, with zero and self-inverse") {
    const auto all = enumerate(2);
    const Characteristic zero(2, {0, 0}, {0, 0});
    for (const auto& a : all) {
        CHECK((a + zero) == a);
        CHECK((a + a).is_zero());
        for (const auto& b : all) {
            CHECK((a + b) == (b + a));
            CHECK((a + b).index() == (a.index() ^ b.index()));
        }
    }
}

TEST_CASE("character sum over even characteristics") {
    // sum_{b even} (-1)^{<a+c,b>} = (-1)^{|a+c|} * 2 for a odd, c even
    const auto evens = enumerate(2, ParityFilter::even);
    for (const auto& a : enumerate(2, ParityFilter::odd))
        for (const auto& c : evens) {
            int sum = 0;
            for (const auto& b : evens) sum += sign_of(pairing(a + c, b));
            CHECK(sum == sign_of((a + c).weight()) * 2);
        }
}

TEST_CASE("fifteen Goepel systems") {
    const auto systems = gopel_systems(2);
    REQUIRE(systems.size() == 15);

    const auto evens = enumerate(2, ParityFilter::even);
    std::set<std::array<std::uint32_t, 4>> brute;
    for (std::size_t p = 0; p < evens.size(); ++p)
        for (std::size_t q = p + 1; q < evens.size(); ++q)
            for (std::size_t r = q + 1; r < evens.size(); ++r)
                for (std::size_t s = r + 1; s < evens.size(); ++s) {
                    const auto& a = evens[p];
                    const auto c = a + evens[q];
                    const auto d = a + evens[r];
                    if ((a + c + d) == evens[s])
                        brute.insert({evens[p].index(), evens[q].index(), evens[r].index(), evens[s].index()});
                }
    CHECK(brute.size() == 15);

    std::map<std::uint32_t, int> multiplicity;
    for (const auto& sys : systems) {
        const auto& m = sys.members();
        CHECK(std::is_sorted(m.begin(), m.end()));
        CHECK(brute.count({m[0].index(), m[1].index(), m[2].index(), m[3].index()}) == 1);
        CHECK((m[0] + m[1] + m[2] + m[3]).is_zero());
        for (const auto& b : m) {
            CHECK(b.is_even());
            ++multiplicity[b.index()];
        }
    }
    CHECK(multiplicity.size() == 10);
    for (const auto& [index, count] : multiplicity) CHECK(count == 6);

    const auto first = systems.front().members();
    CHECK(digit_encode(first[0]) == "00");
    CHECK(digit_encode(first[1]) == "01");
    CHECK(digit_encode(first[2]) == "02");
    CHECK(digit_encode(first[3]) == "03");
    CHECK_THROWS_AS(gopel_systems(3), std::invalid_argument);
}

TEST_CASE("GopelSystem rejects non-cosets and odd members") {
    const auto d = [](const char* s) { return digit_decode(s); };
    CHECK_NOTHROW(GopelSystem({d("00"), d("01"), d("02"), d("03")}));
    CHECK_THROWS_AS(GopelSystem({d("00"), d("01"), d("02"), d("10")}), std::invalid_argument);
    CHECK_THROWS_AS(GopelSystem({d("00"), d("01"), d("11"), d("10")}), std::invalid_argument);
    CHECK_THROWS_AS(GopelSystem({d("00"), d("00"), d("01"), d("01")}), std::invalid_argument);
    const GopelSystem sys({d("00"), d("01"), d("02"), d("03")});
    CHECK(sys.contains(d("02")));
    CHECK_FALSE(sys.contains(d("12")));
}
