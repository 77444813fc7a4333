#pragma once

#include <memory>
#include <string>
#include <vector>

#include "supalg/error.hpp"

namespace supalg {

enum class Parity : int { Even = 0, Odd = 1 };

inline Parity operator+(Parity a, Parity b) {
    return static_cast<Parity>((static_cast<int>(a) + static_cast<int>(b)) & 1);
}

inline const char* to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

// Variable set of a free supercommutative algebra: `even_count` commuting
// polynomial variables and `odd_count` Grassmann generators. Immutable;
// elements hold a shared pointer and contexts compare structurally so that
// round-tripped data stays compatible.
class VariableContext {
public:
    using Ptr = std::shared_ptr<const VariableContext>;

    static constexpr int kMaxOdd = 64;
    static constexpr int kDefaultDegreeCap = 16;

    static Ptr make(int even_count, int odd_count,
                    std::vector<std::string> even_names = {},
                    std::vector<std::string> odd_names = {},
                    int even_degree_cap = kDefaultDegreeCap) {
        return Ptr(new VariableContext(even_count, odd_count, std::move(even_names),
                                       std::move(odd_names), even_degree_cap));
    }

    int even_count() const { return even_count_; }
    int odd_count() const { return odd_count_; }
    int even_degree_cap() const { return even_degree_cap_; }

    const std::string& even_name(int i) const { return even_names_.at(i); }
    const std::string& odd_name(int i) const { return odd_names_.at(i); }
    const std::vector<std::string>& even_names() const { return even_names_; }
    const std::vector<std::string>& odd_names() const { return odd_names_; }

    bool operator==(const VariableContext& o) const {
        return even_count_ == o.even_count_ && odd_count_ == o.odd_count_ &&
               even_names_ == o.even_names_ && odd_names_ == o.odd_names_;
    }
    bool operator!=(const VariableContext& o) const { return !(*this == o); }

private:
    VariableContext(int even_count, int odd_count, std::vector<std::string> even_names,
                    std::vector<std::string> odd_names, int even_degree_cap)
        : even_count_(even_count),
          odd_count_(odd_count),
          even_names_(std::move(even_names)),
          odd_names_(std::move(odd_names)),
          even_degree_cap_(even_degree_cap) {
        if (even_count < 0 || odd_count < 0) throw input_error("negative variable count");
        if (odd_count > kMaxOdd) throw unsupported_error("more than 64 odd generators");
        if (even_degree_cap < 1) throw input_error("degree cap must be positive");
        if (even_names_.empty()) {
            even_names_.reserve(even_count);
            for (int i = 0; i < even_count; ++i) even_names_.push_back("x" + std::to_string(i + 1));
        }
        if (odd_names_.empty()) {
            odd_names_.reserve(odd_count);
            for (int i = 0; i < odd_count; ++i) odd_names_.push_back("t" + std::to_string(i + 1));
        }
        if (static_cast<int>(even_names_.size()) != even_count ||
            static_cast<int>(odd_names_.size()) != odd_count)
            throw input_error("variable name list does not match counts");
    }

    int even_count_;
    int odd_count_;
    std::vector<std::string> even_names_;
    std::vector<std::string> odd_names_;
    int even_degree_cap_;
};

inline void require_same_context(const VariableContext::Ptr& a, const VariableContext::Ptr& b) {
    if (a == b) return;
    if (!a || !b || *a != *b) throw input_error("variable context mismatch");
}

} // namespace supalg
