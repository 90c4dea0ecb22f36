#include "thetakit/characteristics.h"

#include <algorithm>
#include <bit>
#include <cctype>
#include <stdexcept>

namespace thetakit {

namespace {

constexpr int kMaxStorageGenus = 16;

void require_genus(int genus) {
    if (genus < 1 || genus > kMaxStorageGenus)
        throw std::invalid_argument("characteristic genus out of range: " + std::to_string(genus));
}

void require_supported(int genus) {
    if (genus < 1 || genus > kMaxGenus)
        throw std::invalid_argument("unsupported genus " + std::to_string(genus) +
                                    " (supported: 1.." + std::to_string(kMaxGenus) + ")");
}

std::uint32_t pack(const std::vector<int>& bits) {
    std::uint32_t word = 0;
    for (int b : bits) word = (word << 1) | static_cast<std::uint32_t>(b & 1);
    return word;
}

}  // namespace

Characteristic::Characteristic(Words, int genus, std::uint32_t prime, std::uint32_t double_prime)
    : genus_(genus), prime_(prime), double_prime_(double_prime) {}

Characteristic::Characteristic(int genus, const std::vector<int>& a_prime,
                               const std::vector<int>& a_double_prime)
    : genus_(genus), prime_(0), double_prime_(0) {
    require_genus(genus);
    if (static_cast<int>(a_prime.size()) != genus ||
        static_cast<int>(a_double_prime.size()) != genus)
        throw std::invalid_argument("characteristic vectors must have length genus");
    prime_ = pack(a_prime);
    double_prime_ = pack(a_double_prime);
}

Characteristic Characteristic::from_index(int genus, std::uint32_t index) {
    require_genus(genus);
    const std::uint32_t mask = (1u << genus) - 1;
    if (index >> (2 * genus))
        throw std::invalid_argument("characteristic index out of range");
    return Characteristic(Words{}, genus, (index >> genus) & mask, index & mask);
}

int Characteristic::a_prime(int j) const { return static_cast<int>((prime_ >> (genus_ - 1 - j)) & 1u); }

int Characteristic::a_double_prime(int j) const {
    return static_cast<int>((double_prime_ >> (genus_ - 1 - j)) & 1u);
}

int Characteristic::weight() const { return std::popcount(prime_ & double_prime_) & 1; }

Characteristic Characteristic::operator+(const Characteristic& other) const {
    if (genus_ != other.genus_) throw std::invalid_argument("genus mismatch in characteristic sum");
    return Characteristic(Words{}, genus_, prime_ ^ other.prime_, double_prime_ ^ other.double_prime_);
}

std::string Characteristic::to_string() const {
    std::string out = "(";
    for (int j = 0; j < genus_; ++j) {
        if (j) out += ',';
        out += static_cast<char>('0' + a_prime(j));
    }
    out += ';';
    for (int j = 0; j < genus_; ++j) {
        if (j) out += ',';
        out += static_cast<char>('0' + a_double_prime(j));
    }
    return out + ")";
}

Characteristic Characteristic::parse(std::string_view text, int genus) {
    require_genus(genus);
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (genus == 2 && s.size() == 2 && std::isdigit(static_cast<unsigned char>(s[0])))
        return digit_decode(s);
    if (genus == 1 && s.size() == 2 && (s[0] == '0' || s[0] == '1') && (s[1] == '0' || s[1] == '1'))
        return Characteristic(1, {s[0] - '0'}, {s[1] - '0'});
    if (s.size() < 2 || s.front() != '(' || s.back() != ')')
        throw std::invalid_argument("cannot parse characteristic '" + std::string(text) + "'");
    s = s.substr(1, s.size() - 2);
    const auto semi = s.find(';');
    if (semi == std::string::npos)
        throw std::invalid_argument("characteristic needs ';' between a' and a''");
    auto parse_bits = [&](const std::string& part) {
        std::vector<int> bits;
        std::size_t pos = 0;
        while (pos <= part.size()) {
            auto comma = part.find(',', pos);
            if (comma == std::string::npos) comma = part.size();
            const std::string item = part.substr(pos, comma - pos);
            if (item != "0" && item != "1")
                throw std::invalid_argument("characteristic entries must be 0 or 1");
            bits.push_back(item[0] - '0');
            pos = comma + 1;
        }
        return bits;
    };
    return Characteristic(genus, parse_bits(s.substr(0, semi)), parse_bits(s.substr(semi + 1)));
}

Parity parity(const Characteristic& a) { return a.parity(); }

int pairing(const Characteristic& a, const Characteristic& b) {
    if (a.genus() != b.genus()) throw std::invalid_argument("genus mismatch in pairing");
    return (std::popcount(a.prime_word() & b.double_prime_word()) +
            std::popcount(b.prime_word() & a.double_prime_word())) &
           1;
}

std::vector<Characteristic> enumerate(int genus, ParityFilter filter) {
    require_supported(genus);
    std::vector<Characteristic> out;
    const std::uint32_t total = 1u << (2 * genus);
    for (std::uint32_t i = 0; i < total; ++i) {
        auto a = Characteristic::from_index(genus, i);
        if (filter == ParityFilter::even && !a.is_even()) continue;
        if (filter == ParityFilter::odd && a.is_even()) continue;
        out.push_back(a);
    }
    return out;
}

int even_count(int genus) { return (1 << (genus - 1)) * ((1 << genus) + 1); }

std::string digit_encode(const Characteristic& a) {
    if (a.genus() != 2) throw std::invalid_argument("digit labels exist only in genus 2");
    return {static_cast<char>('0' + a.prime_word()), static_cast<char>('0' + a.double_prime_word())};
}

Characteristic digit_decode(std::string_view label) {
    if (label.size() != 2 || label[0] < '0' || label[0] > '3' || label[1] < '0' || label[1] > '3')
        throw std::invalid_argument("bad genus-2 digit label '" + std::string(label) + "'");
    return Characteristic::from_index(2, static_cast<std::uint32_t>((label[0] - '0') * 4 + (label[1] - '0')));
}

GopelSystem::GopelSystem(std::array<Characteristic, 4> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    const int g = members_[0].genus();
    for (const auto& m : members_) {
        if (m.genus() != g) throw std::invalid_argument("Göpel system members differ in genus");
        if (!m.is_even()) throw std::invalid_argument("Göpel system members must be even");
    }
    if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
        throw std::invalid_argument("Göpel system members must be distinct");
    // Four distinct points form a coset {a, a+c, a+d, a+c+d} iff they sum to zero.
    if (!(members_[0] + members_[1] + members_[2] + members_[3]).is_zero())
        throw std::invalid_argument("Göpel system members do not form a coset");
}

bool GopelSystem::contains(const Characteristic& a) const {
    return std::find(members_.begin(), members_.end(), a) != members_.end();
}

std::vector<GopelSystem> gopel_systems(int genus) {
    if (genus != 2) throw std::invalid_argument("Göpel systems are enumerated for genus 2 only");
    const auto even = enumerate(2, ParityFilter::even);
    const std::size_t n = even.size();
    std::vector<GopelSystem> out;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                for (std::size_t l = k + 1; l < n; ++l)
                    if ((even[i] + even[j] + even[k] + even[l]).is_zero())
                        out.emplace_back(std::array{even[i], even[j], even[k], even[l]});
    return out;
}

}  // namespace thetakit
