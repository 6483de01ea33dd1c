#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace btrace {

/// Dense index of an event symbol within an Alphabet.
using Symbol = std::uint32_t;

/// A finite trace: sequence of interned symbols.
using Word = std::vector<Symbol>;

/// Interning table for event symbols. Symbol order is declaration order;
/// representative tie-breaking and dump order follow it.
class Alphabet {
public:
    /// Interns `name` and returns its id; existing names keep their id.
    Symbol add(std::string_view name);

    std::optional<Symbol> find(std::string_view name) const;

    const std::string& name(Symbol s) const { return names_.at(s); }

    std::size_t size() const { return names_.size(); }

    const std::vector<std::string>& names() const { return names_; }

    bool operator==(const Alphabet&) const = default;

private:
    std::vector<std::string> names_;
    std::map<std::string, Symbol, std::less<>> ids_;
};

/// Renders a word by concatenating symbol names; the empty word prints as "<eps>".
std::string format_word(const Alphabet& sigma, const Word& w);

}  // namespace btrace
