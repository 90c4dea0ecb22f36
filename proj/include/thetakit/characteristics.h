#pragma once

// Half-integer theta characteristics a = (a', a'') in {0,1}^{2g}.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace thetakit {

inline constexpr int kMaxGenus = 3;

enum class Parity { even, odd };

enum class ParityFilter { all, even, odd };

/// A reduced 2-characteristic of genus g. Bits are kept mod 2 at all times.
///
/// Internally a' and a'' are stored as g-bit words with the first coordinate
/// in the most significant position, so that index() is the lexicographic rank
/// of the concatenated bit string (a'_1 ... a'_g a''_1 ... a''_g).
class Characteristic {
public:
    /// Bits are taken mod 2. Throws std::invalid_argument unless
    /// 1 <= genus <= 16 and the vectors have length genus.
    Characteristic(int genus, const std::vector<int>& a_prime,
                   const std::vector<int>& a_double_prime);

    /// Inverse of index(); throws std::invalid_argument when out of range.
    static Characteristic from_index(int genus, std::uint32_t index);

    /// Parses "(a'_1,...,a'_g;a''_1,...,a''_g)" for any genus, or the two-digit
    /// label ("20") when genus == 2, or the bit pair a'a'' ("10") when genus == 1.
    static Characteristic parse(std::string_view text, int genus);

    int genus() const { return genus_; }
    int a_prime(int j) const;         ///< a'_j, j = 0..g-1
    int a_double_prime(int j) const;  ///< a''_j, j = 0..g-1
    std::uint32_t prime_word() const { return prime_; }
    std::uint32_t double_prime_word() const { return double_prime_; }

    std::uint32_t index() const { return (prime_ << genus_) | double_prime_; }

    /// |a| = a'.a'' mod 2
    int weight() const;
    Parity parity() const { return weight() == 0 ? Parity::even : Parity::odd; }
    bool is_even() const { return weight() == 0; }
    bool is_zero() const { return prime_ == 0 && double_prime_ == 0; }

    Characteristic operator+(const Characteristic& other) const;

    /// "(1,0;0,1)"
    std::string to_string() const;

    friend bool operator==(const Characteristic&, const Characteristic&) = default;
    friend auto operator<=>(const Characteristic& x, const Characteristic& y) {
        if (x.genus_ != y.genus_) return x.genus_ <=> y.genus_;
        return x.index() <=> y.index();
    }

private:
    struct Words {};
    Characteristic(Words, int genus, std::uint32_t prime, std::uint32_t double_prime);

    int genus_;
    std::uint32_t prime_;
    std::uint32_t double_prime_;
};

Parity parity(const Characteristic& a);

/// <a,b> = a'.b'' - b'.a'' mod 2. Throws std::invalid_argument on genus mismatch.
int pairing(const Characteristic& a, const Characteristic& b);

/// (-1)^k for an integer k.
inline int sign_of(int k) { return (k & 1) ? -1 : 1; }

/// All characteristics of the given genus in lexicographic order, optionally
/// restricted by parity. Supported genera: 1..kMaxGenus.
std::vector<Characteristic> enumerate(int genus, ParityFilter filter = ParityFilter::all);

/// 2^{g-1}(2^g+1)
int even_count(int genus);

/// Genus-2 two-digit label: digit 2*x_1 + x_2 for a' then for a''.
std::string digit_encode(const Characteristic& a);
Characteristic digit_decode(std::string_view label);

/// Four distinct even characteristics {a, a+c, a+d, a+c+d}.
class GopelSystem {
public:
    /// Throws std::invalid_argument if the members are not four distinct even
    /// characteristics of one genus forming a coset of a 2-dimensional subspace.
    explicit GopelSystem(std::array<Characteristic, 4> members);

    const std::array<Characteristic, 4>& members() const { return members_; }
    bool contains(const Characteristic& a) const;

private:
    std::array<Characteristic, 4> members_;
};

/// The fifteen genus-2 Göpel systems, members sorted, systems in lexicographic
/// order of their member lists.
std::vector<GopelSystem> gopel_systems(int genus = 2);

}  // namespace thetakit
