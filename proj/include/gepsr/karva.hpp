// SPDX-License-Identifier: Apache-2.0
//
// Karva genes: fixed-length symbol strings that always decode to valid
// expression trees. A gene is split into a head (functions and terminals)
// and a tail (terminals only) of length t = h*(max_arity - 1) + 1, which
// guarantees that level-order decoding never runs out of arguments.
// Numeric constants use the RNC scheme: a '?' terminal plus a Dc index
// domain selecting values from a per-gene constants array.

#ifndef GEPSR_KARVA_HPP
#define GEPSR_KARVA_HPP

#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace gepsr {

/// Raised when a gene contains a token outside the alphabet or violates
/// the head/tail structure.
struct MalformedGeneError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when evaluation meets a variable terminal with no bound value.
struct MissingBindingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Func { Add, Sub, Mul, Div, Neg, Sin, Cos, Sqrt, Ln, Exp };

struct FunctionSymbol {
    char id;
    int arity;
    Func semantics;
};

/// The function half of a gene alphabet. Ids are unique single characters.
class FunctionSet {
public:
    explicit FunctionSet(std::vector<FunctionSymbol> symbols);

    /// Build from semantic names ("add", "sub", "mul", "div", "neg",
    /// "sin", "cos", "sqrt", "ln", "exp") using the canonical ids
    /// + - * / ~ s c q l e.
    static FunctionSet from_names(const std::vector<std::string>& names);

    /// The default set {add, sub, mul, div}.
    static FunctionSet arithmetic();

    const FunctionSymbol* find(char id) const;
    const std::vector<FunctionSymbol>& symbols() const { return symbols_; }
    int max_arity() const { return max_arity_; }
    std::vector<std::string> names() const;

private:
    std::vector<FunctionSymbol> symbols_;
    int max_arity_ = 0;
};

/// Semantic name for a function ("add", ...). Throws std::invalid_argument
/// for an unknown name in the reverse direction.
std::string func_name(Func f);
Func func_from_name(const std::string& name);

/// Canonical symbol (id + arity) for a function.
FunctionSymbol function_symbol(Func f);

struct TerminalSymbol {
    char id;
    int index; ///< feature index; kConstantIndex marks the RNC placeholder

    static constexpr int kConstantIndex = -1;
    bool is_constant_placeholder() const { return index == kConstantIndex; }

    static TerminalSymbol variable(char id, int index);
    static TerminalSymbol constant_placeholder(); ///< id '?'
};

class TerminalSet {
public:
    explicit TerminalSet(std::vector<TerminalSymbol> symbols);

    /// Variable terminals with ids `ids[i]` bound to feature index i,
    /// plus the '?' placeholder when with_constants is set.
    static TerminalSet variables(const std::vector<char>& ids, bool with_constants = false);

    const TerminalSymbol* find(char id) const;
    const std::vector<TerminalSymbol>& symbols() const { return symbols_; }
    bool has_constant_placeholder() const;

private:
    std::vector<TerminalSymbol> symbols_;
};

/// Complete gene alphabet: what may appear in heads (functions + terminals)
/// and tails (terminals only).
struct Alphabet {
    FunctionSet functions;
    TerminalSet terminals;

    int max_arity() const { return functions.max_arity(); }
};

/// Tail length that guarantees decoding closure: h*(max_arity - 1) + 1.
int tail_length(int head_length, int max_arity);

/// One fixed-length Karva gene. symbols has length head_length + t;
/// positions [head_length, head_length + t) hold terminals only.
/// dc (length t) and constants are present when RNC is in use.
struct Gene {
    std::string symbols;
    int head_length = 0;
    std::vector<int> dc;
    std::vector<double> constants;

    int tail_length() const { return static_cast<int>(symbols.size()) - head_length; }
};

/// Throws MalformedGeneError unless the gene satisfies all structural
/// invariants under the given alphabet.
void validate_gene(const Gene& gene, const Alphabet& alphabet);

/// A multigene individual. All genes share head length, tail length and
/// alphabet; linking must be a binary function.
struct Chromosome {
    std::vector<Gene> genes;
    FunctionSymbol linking;
};

/// Decoded phenotype. Leaves are terminals or literal constants.
struct ExprTree {
    std::variant<FunctionSymbol, TerminalSymbol, double> node;
    std::vector<ExprTree> children;
};

/// Level-order decoding: symbol 0 is the root and each following symbol
/// fills the next open child slot in reading order. Symbols past the last
/// open slot are non-coding. The i-th '?' consumed resolves through dc[i]
/// into the constants array.
ExprTree decode(const Gene& gene, const Alphabet& alphabet);

/// Recursive evaluation in double precision. Arithmetic is unprotected:
/// division by zero and domain errors produce IEEE infinities/NaNs that
/// propagate to the result.
double evaluate_tree(const ExprTree& tree, std::span<const double> bindings);

/// Per-gene decode of a whole chromosome, in gene order.
std::vector<ExprTree> decode_chromosome(const Chromosome& chrom, const Alphabet& alphabet);

/// Linking function folded left-to-right over per-gene tree values.
double evaluate_linked(std::span<const ExprTree> trees, const FunctionSymbol& linking,
                       std::span<const double> bindings);

/// decode_chromosome + evaluate_linked in one call.
double evaluate_chromosome(const Chromosome& chrom, const Alphabet& alphabet,
                           std::span<const double> bindings);

/// Fully parenthesized infix rendering; literal constants keep at least
/// 9 significant digits (round-trip precision is used).
std::string to_infix(const ExprTree& tree);

} // namespace gepsr

#endif
