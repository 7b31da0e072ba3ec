#include "bgossip/rules.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <numeric>

#include "bgossip/errors.hpp"

namespace bgossip {

int OpSet::size() const noexcept { return std::popcount(mask_); }

std::vector<BooleanOp> OpSet::members() const {
    std::vector<BooleanOp> out;
    for (int k = 0; k < 16; ++k)
        if ((mask_ >> k) & 1u) out.emplace_back(k);
    return out;
}

std::string OpSet::to_string() const {
    std::string out;
    for (auto op : members()) {
        if (!out.empty()) out += ',';
        out += op.hex();
    }
    return out;
}

std::string_view to_string(RuleFamily family) {
    switch (family) {
        case RuleFamily::PST: return "PST";
        case RuleFamily::COND_I: return "COND_I";
        case RuleFamily::COND_II: return "COND_II";
        case RuleFamily::FROZEN_23AB: return "FROZEN_23AB";
        case RuleFamily::B1: return "B1";
        case RuleFamily::B2: return "B2";
        case RuleFamily::B: return "B";
    }
    return "?";
}

bool is_member(OpSet ops, RuleFamily family) {
    constexpr OpSet only_a{0xA};
    constexpr OpSet two_and_b{0x2, 0xB};
    switch (family) {
        case RuleFamily::PST: return ops.subset_of(families::PST);
        case RuleFamily::COND_I: return ops.subset_of(families::COND_I);
        case RuleFamily::COND_II: return ops.subset_of(families::COND_II);
        case RuleFamily::FROZEN_23AB: return ops.subset_of(families::FROZEN_23AB);
        case RuleFamily::B1:
            return ops.contains(BooleanOp{0xA}) && ops.subset_of(families::FROZEN_23AB) && ops != only_a;
        case RuleFamily::B2:
            return two_and_b.subset_of(ops) && ops.subset_of(families::FROZEN_23AB);
        case RuleFamily::B:
            return is_member(ops, RuleFamily::B1) || is_member(ops, RuleFamily::B2);
    }
    return false;
}

RuleSet::RuleSet(std::vector<BooleanOp> ops)
    : RuleSet(ops, std::vector<double>(ops.size(), ops.empty() ? 0.0 : 1.0 / ops.size())) {}

RuleSet::RuleSet(OpSet set) : RuleSet(set.members()) {}

RuleSet::RuleSet(std::vector<BooleanOp> ops, std::vector<double> probs)
    : ops_(std::move(ops)), probs_(std::move(probs)) {
    if (ops_.empty() || ops_.size() > 16) throw precondition_error("rule set must hold 1..16 operators");
    if (probs_.size() != ops_.size())
        throw precondition_error("rule set has " + std::to_string(ops_.size()) + " operators but " +
                                 std::to_string(probs_.size()) + " probabilities");
    for (auto op : ops_) {
        if (set_.contains(op)) throw precondition_error(std::string("duplicate operator ") + op.hex());
        set_ = OpSet(static_cast<std::uint16_t>(set_.mask() | (1u << op.index())));
    }
    double total = 0.0;
    for (double p : probs_) {
        if (!(p > 0.0)) throw precondition_error("rule probabilities must be positive");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12) throw precondition_error("rule probabilities must sum to 1");
}

RuleSet positive_rules(double p_star) {
    if (!(p_star >= 0.0 && p_star <= 1.0)) throw precondition_error("p_star must lie in [0,1]");
    if (p_star == 1.0) return RuleSet({ops::OR});
    if (p_star == 0.0) return RuleSet({ops::AND});
    return RuleSet({ops::OR, ops::AND}, {p_star, 1.0 - p_star});
}

std::vector<BooleanOp> parse_ops(std::string_view text) {
    std::vector<BooleanOp> out;
    for (char c : text) {
        if (c == ',' || c == ' ') continue;
        int v = -1;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
        else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
        if (v < 0) throw parse_error(std::string("bad operator digit '") + c + "'");
        out.emplace_back(v);
    }
    if (out.empty()) throw parse_error("empty rule list");
    return out;
}

std::vector<double> parse_probs(std::string_view text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        if (comma == std::string_view::npos) comma = text.size();
        auto token = text.substr(pos, comma - pos);
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size())
            throw parse_error("bad probability '" + std::string(token) + "'");
        out.push_back(value);
        pos = comma + 1;
    }
    return out;
}

}  // namespace bgossip
