#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bgossip {

// One of the 16 binary Boolean operators. The index is the truth table read
// as a 4-bit number: 8*f(0,0) + 4*f(0,1) + 2*f(1,0) + f(1,1).
class BooleanOp {
public:
    constexpr BooleanOp() = default;
    constexpr explicit BooleanOp(int index) : index_(static_cast<std::uint8_t>(index & 0xF)) {}

    constexpr int index() const noexcept { return index_; }
    constexpr int eval(int a, int b) const noexcept { return (index_ >> (3 - 2 * a - b)) & 1; }
    char hex() const noexcept { return "0123456789ABCDEF"[index_]; }

    friend constexpr bool operator==(BooleanOp, BooleanOp) = default;
    friend constexpr auto operator<=>(BooleanOp, BooleanOp) = default;

private:
    std::uint8_t index_ = 0;
};

constexpr int eval(BooleanOp op, int a, int b) noexcept { return op.eval(a, b); }

namespace ops {
inline constexpr BooleanOp AND{0x1};
inline constexpr BooleanOp PROJECT_FIRST{0x3};
inline constexpr BooleanOp XOR{0x6};
inline constexpr BooleanOp OR{0x7};
}  // namespace ops

// Set of operators as a 16-bit mask; bit k set iff operator k is present.
class OpSet {
public:
    constexpr OpSet() = default;
    constexpr explicit OpSet(std::uint16_t mask) : mask_(mask) {}
    constexpr OpSet(std::initializer_list<int> indices) {
        for (int k : indices) mask_ |= static_cast<std::uint16_t>(1u << (k & 0xF));
    }

    constexpr std::uint16_t mask() const noexcept { return mask_; }
    constexpr bool empty() const noexcept { return mask_ == 0; }
    constexpr bool contains(BooleanOp op) const noexcept { return (mask_ >> op.index()) & 1u; }
    constexpr bool subset_of(OpSet other) const noexcept { return (mask_ & ~other.mask_) == 0; }
    int size() const noexcept;
    std::vector<BooleanOp> members() const;

    // "2,B" style, ascending.
    std::string to_string() const;

    friend constexpr bool operator==(OpSet, OpSet) = default;

private:
    std::uint16_t mask_ = 0;
};

enum class RuleFamily { PST, COND_I, COND_II, FROZEN_23AB, B1, B2, B };

std::string_view to_string(RuleFamily family);

// The defining sets for the subset-type families.
namespace families {
inline constexpr OpSet PST{0x1, 0x7};
inline constexpr OpSet COND_I{0, 1, 2, 3, 4, 5, 6, 7};
inline constexpr OpSet COND_II{0x1, 0x3, 0x5, 0x7, 0x9, 0xB, 0xD, 0xF};
inline constexpr OpSet FROZEN_23AB{0x2, 0x3, 0xA, 0xB};
inline constexpr OpSet KEEP_ZERO_EDGE{0x2, 0x3};
inline constexpr OpSet KEEP_ONE_EDGE{0x3, 0xB};
inline constexpr OpSet PROJECTION{0x3};
}  // namespace families

// PST/COND_I/COND_II/FROZEN_23AB are subset tests. B1, B2 and B are the nine
// rule sets inside {2,3,A,B} whose absorbing behaviour hinges on bipartiteness.
bool is_member(OpSet ops, RuleFamily family);

// Iterates all 65535 nonempty operator sets in ascending mask order.
class AllRuleSets {
public:
    class iterator {
    public:
        using value_type = OpSet;
        using difference_type = std::ptrdiff_t;

        iterator() = default;
        explicit iterator(std::uint32_t mask) : mask_(mask) {}
        OpSet operator*() const { return OpSet(static_cast<std::uint16_t>(mask_)); }
        iterator& operator++() {
            ++mask_;
            return *this;
        }
        iterator operator++(int) {
            auto copy = *this;
            ++mask_;
            return copy;
        }
        friend bool operator==(const iterator&, const iterator&) = default;

    private:
        std::uint32_t mask_ = 1;
    };

    iterator begin() const { return iterator(1); }
    iterator end() const { return iterator(0x10000); }
};

inline AllRuleSets all_rule_sets() { return {}; }

// Ordered rule set with positive selection probabilities.
class RuleSet {
public:
    // Uniform probabilities.
    explicit RuleSet(std::vector<BooleanOp> ops);
    RuleSet(std::vector<BooleanOp> ops, std::vector<double> probs);
    explicit RuleSet(OpSet set);

    const std::vector<BooleanOp>& ops() const noexcept { return ops_; }
    const std::vector<double>& probs() const noexcept { return probs_; }
    int size() const noexcept { return static_cast<int>(ops_.size()); }
    OpSet op_set() const noexcept { return set_; }

private:
    std::vector<BooleanOp> ops_;
    std::vector<double> probs_;
    OpSet set_;
};

// {AND, OR} with probability `p_star` on OR. Collapses to a single operator
// when p_star is 0 or 1.
RuleSet positive_rules(double p_star);

// "2,B" or "2B" (comma optional between single hex digits).
std::vector<BooleanOp> parse_ops(std::string_view text);
std::vector<double> parse_probs(std::string_view text);

}  // namespace bgossip
