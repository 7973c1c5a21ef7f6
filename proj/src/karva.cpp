// SPDX-License-Identifier: Apache-2.0

#include "gepsr/karva.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <unordered_set>

namespace gepsr {

namespace {

struct NamedFunc {
    const char* name;
    char id;
    int arity;
    Func semantics;
};

constexpr NamedFunc kCatalog[] = {
    { "add", '+', 2, Func::Add },
    { "sub", '-', 2, Func::Sub },
    { "mul", '*', 2, Func::Mul },
    { "div", '/', 2, Func::Div },
    { "neg", '~', 1, Func::Neg },
    { "sin", 's', 1, Func::Sin },
    { "cos", 'c', 1, Func::Cos },
    { "sqrt", 'q', 1, Func::Sqrt },
    { "ln", 'l', 1, Func::Ln },
    { "exp", 'e', 1, Func::Exp },
};

const NamedFunc& catalog_entry(Func f)
{
    for (const auto& e : kCatalog) {
        if (e.semantics == f) return e;
    }
    throw std::invalid_argument("unknown function semantics");
}

} // namespace

std::string func_name(Func f)
{
    return catalog_entry(f).name;
}

Func func_from_name(const std::string& name)
{
    for (const auto& e : kCatalog) {
        if (name == e.name) return e.semantics;
    }
    throw std::invalid_argument("unknown function name: " + name);
}

FunctionSymbol function_symbol(Func f)
{
    const auto& e = catalog_entry(f);
    return FunctionSymbol{ e.id, e.arity, e.semantics };
}

FunctionSet::FunctionSet(std::vector<FunctionSymbol> symbols)
    : symbols_(std::move(symbols))
{
    if (symbols_.empty()) throw std::invalid_argument("empty function set");
    std::unordered_set<char> seen;
    for (const auto& s : symbols_) {
        if (!seen.insert(s.id).second)
            throw std::invalid_argument(std::string("duplicate function id: ") + s.id);
        const int expected = catalog_entry(s.semantics).arity;
        if (s.arity != expected)
            throw std::invalid_argument("arity does not match semantics for " + func_name(s.semantics));
        max_arity_ = std::max(max_arity_, s.arity);
    }
}

FunctionSet FunctionSet::from_names(const std::vector<std::string>& names)
{
    std::vector<FunctionSymbol> out;
    out.reserve(names.size());
    for (const auto& n : names) {
        const auto& e = catalog_entry(func_from_name(n));
        out.push_back({ e.id, e.arity, e.semantics });
    }
    return FunctionSet(std::move(out));
}

FunctionSet FunctionSet::arithmetic()
{
    return from_names({ "add", "sub", "mul", "div" });
}

const FunctionSymbol* FunctionSet::find(char id) const
{
    for (const auto& s : symbols_) {
        if (s.id == id) return &s;
    }
    return nullptr;
}

std::vector<std::string> FunctionSet::names() const
{
    std::vector<std::string> out;
    out.reserve(symbols_.size());
    for (const auto& s : symbols_) out.push_back(func_name(s.semantics));
    return out;
}

TerminalSymbol TerminalSymbol::variable(char id, int index)
{
    if (index < 0) throw std::invalid_argument("variable index must be >= 0");
    return TerminalSymbol{ id, index };
}

TerminalSymbol TerminalSymbol::constant_placeholder()
{
    return TerminalSymbol{ '?', kConstantIndex };
}

TerminalSet::TerminalSet(std::vector<TerminalSymbol> symbols)
    : symbols_(std::move(symbols))
{
    if (symbols_.empty()) throw std::invalid_argument("empty terminal set");
    std::unordered_set<char> seen;
    for (const auto& s : symbols_) {
        if (!seen.insert(s.id).second)
            throw std::invalid_argument(std::string("duplicate terminal id: ") + s.id);
    }
}

TerminalSet TerminalSet::variables(const std::vector<char>& ids, bool with_constants)
{
    std::vector<TerminalSymbol> out;
    out.reserve(ids.size() + 1);
    for (int i = 0; i < static_cast<int>(ids.size()); ++i)
        out.push_back(TerminalSymbol::variable(ids[i], i));
    if (with_constants) out.push_back(TerminalSymbol::constant_placeholder());
    return TerminalSet(std::move(out));
}

const TerminalSymbol* TerminalSet::find(char id) const
{
    for (const auto& s : symbols_) {
        if (s.id == id) return &s;
    }
    return nullptr;
}

bool TerminalSet::has_constant_placeholder() const
{
    for (const auto& s : symbols_) {
        if (s.is_constant_placeholder()) return true;
    }
    return false;
}

int tail_length(int head_length, int max_arity)
{
    if (head_length < 1 || max_arity < 1)
        throw std::invalid_argument("head_length and max_arity must be >= 1");
    return head_length * (max_arity - 1) + 1;
}

void validate_gene(const Gene& gene, const Alphabet& alphabet)
{
    const int h = gene.head_length;
    const int t = gene.tail_length();
    if (h < 1) throw MalformedGeneError("head length must be >= 1");
    if (t != tail_length(h, alphabet.max_arity()))
        throw MalformedGeneError("tail length does not match h*(max_arity-1)+1");
    for (int i = 0; i < static_cast<int>(gene.symbols.size()); ++i) {
        const char id = gene.symbols[i];
        const bool is_terminal = alphabet.terminals.find(id) != nullptr;
        const bool is_function = alphabet.functions.find(id) != nullptr;
        if (!is_terminal && !is_function)
            throw MalformedGeneError(std::string("unknown symbol token: ") + id);
        if (i >= h && !is_terminal)
            throw MalformedGeneError(std::string("function in tail at position ") + std::to_string(i));
    }
    for (int idx : gene.dc) {
        if (idx < 0 || idx >= static_cast<int>(gene.constants.size()))
            throw MalformedGeneError("dc index out of range of constants array");
    }
}

ExprTree decode(const Gene& gene, const Alphabet& alphabet)
{
    if (gene.symbols.empty()) throw MalformedGeneError("empty gene");

    // Consume symbols left to right; consumption order is exactly the
    // level order of the tree, so a queue of parents pairs each new node
    // with the next open child slot.
    std::vector<std::variant<FunctionSymbol, TerminalSymbol, double>> payload;
    std::vector<int> arities;
    std::vector<std::vector<std::size_t>> kids;
    std::size_t pos = 0;
    std::size_t next_constant = 0;

    auto consume = [&]() -> std::size_t {
        if (pos >= gene.symbols.size())
            throw MalformedGeneError("gene exhausted before tree completion");
        const char id = gene.symbols[pos++];
        if (const FunctionSymbol* f = alphabet.functions.find(id)) {
            payload.emplace_back(*f);
            arities.push_back(f->arity);
        } else if (const TerminalSymbol* term = alphabet.terminals.find(id)) {
            if (term->is_constant_placeholder()) {
                if (next_constant >= gene.dc.size())
                    throw MalformedGeneError("constant placeholder without dc entry");
                const int ci = gene.dc[next_constant++];
                if (ci < 0 || ci >= static_cast<int>(gene.constants.size()))
                    throw MalformedGeneError("dc index out of range of constants array");
                payload.emplace_back(gene.constants[ci]);
            } else {
                payload.emplace_back(*term);
            }
            arities.push_back(0);
        } else {
            throw MalformedGeneError(std::string("unknown symbol token: ") + id);
        }
        kids.emplace_back();
        return payload.size() - 1;
    };

    std::deque<std::size_t> open;
    const std::size_t root = consume();
    if (arities[root] > 0) open.push_back(root);
    while (!open.empty()) {
        const std::size_t parent = open.front();
        open.pop_front();
        for (int k = 0; k < arities[parent]; ++k) {
            const std::size_t child = consume();
            kids[parent].push_back(child);
            if (arities[child] > 0) open.push_back(child);
        }
    }

    auto build = [&](auto&& self, std::size_t idx) -> ExprTree {
        ExprTree out;
        out.node = payload[idx];
        out.children.reserve(kids[idx].size());
        for (std::size_t c : kids[idx]) out.children.push_back(self(self, c));
        return out;
    };
    return build(build, root);
}

double evaluate_tree(const ExprTree& tree, std::span<const double> bindings)
{
    if (const double* lit = std::get_if<double>(&tree.node)) return *lit;
    if (const TerminalSymbol* term = std::get_if<TerminalSymbol>(&tree.node)) {
        if (term->index < 0 || term->index >= static_cast<int>(bindings.size()))
            throw MissingBindingError(std::string("no binding for terminal ") + term->id);
        return bindings[term->index];
    }
    const FunctionSymbol& f = std::get<FunctionSymbol>(tree.node);
    const double a = evaluate_tree(tree.children[0], bindings);
    switch (f.semantics) {
    case Func::Neg: return -a;
    case Func::Sin: return std::sin(a);
    case Func::Cos: return std::cos(a);
    case Func::Sqrt: return std::sqrt(a);
    case Func::Ln: return std::log(a);
    case Func::Exp: return std::exp(a);
    default: break;
    }
    const double b = evaluate_tree(tree.children[1], bindings);
    switch (f.semantics) {
    case Func::Add: return a + b;
    case Func::Sub: return a - b;
    case Func::Mul: return a * b;
    case Func::Div: return a / b;
    default: throw std::logic_error("unhandled function semantics");
    }
}

std::vector<ExprTree> decode_chromosome(const Chromosome& chrom, const Alphabet& alphabet)
{
    std::vector<ExprTree> trees;
    trees.reserve(chrom.genes.size());
    for (const auto& g : chrom.genes) trees.push_back(decode(g, alphabet));
    return trees;
}

double evaluate_linked(std::span<const ExprTree> trees, const FunctionSymbol& linking,
                       std::span<const double> bindings)
{
    if (trees.empty()) throw std::invalid_argument("chromosome has no genes");
    double acc = evaluate_tree(trees[0], bindings);
    for (std::size_t i = 1; i < trees.size(); ++i) {
        const double v = evaluate_tree(trees[i], bindings);
        switch (linking.semantics) {
        case Func::Add: acc += v; break;
        case Func::Sub: acc -= v; break;
        case Func::Mul: acc *= v; break;
        case Func::Div: acc /= v; break;
        default: throw std::invalid_argument("linking function must be binary");
        }
    }
    return acc;
}

double evaluate_chromosome(const Chromosome& chrom, const Alphabet& alphabet,
                           std::span<const double> bindings)
{
    const auto trees = decode_chromosome(chrom, alphabet);
    return evaluate_linked(trees, chrom.linking, bindings);
}

namespace {

std::string render_literal(double value)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

} // namespace

std::string to_infix(const ExprTree& tree)
{
    if (const double* lit = std::get_if<double>(&tree.node)) return render_literal(*lit);
    if (const TerminalSymbol* term = std::get_if<TerminalSymbol>(&tree.node))
        return std::string(1, term->id);

    const FunctionSymbol& f = std::get<FunctionSymbol>(tree.node);
    switch (f.semantics) {
    case Func::Add: return "(" + to_infix(tree.children[0]) + "+" + to_infix(tree.children[1]) + ")";
    case Func::Sub: return "(" + to_infix(tree.children[0]) + "-" + to_infix(tree.children[1]) + ")";
    case Func::Mul: return "(" + to_infix(tree.children[0]) + "*" + to_infix(tree.children[1]) + ")";
    case Func::Div: return "(" + to_infix(tree.children[0]) + "/" + to_infix(tree.children[1]) + ")";
    case Func::Neg: return "(-" + to_infix(tree.children[0]) + ")";
    case Func::Sin: return "sin(" + to_infix(tree.children[0]) + ")";
    case Func::Cos: return "cos(" + to_infix(tree.children[0]) + ")";
    case Func::Sqrt: return "sqrt(" + to_infix(tree.children[0]) + ")";
    case Func::Ln: return "ln(" + to_infix(tree.children[0]) + ")";
    case Func::Exp: return "exp(" + to_infix(tree.children[0]) + ")";
    }
    throw std::logic_error("unhandled function semantics");
}

} // namespace gepsr
