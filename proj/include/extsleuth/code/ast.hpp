#pragma once

#include <cstdint>
#include <deque>
#include <string>
#include <string_view>
#include <vector>

namespace extsleuth::code {

/// Byte range in the original source plus its 1-based line/column.
struct Span {
    std::uint32_t offset = 0;
    std::uint32_t length = 0;
    std::uint32_t line = 0;
    std::uint32_t column = 0;

    std::uint32_t end() const { return offset + length; }
    bool operator==(const Span&) const = default;
};

enum class NodeKind : std::uint8_t {
    Program,
    // statements
    VarDecl,       // value: var|let|const; kids: Declarator...
    Declarator,    // kids: target, [init]
    FunctionDecl,  // value: name; kids: params..., Body
    ClassDecl,     // value: name; kids: [superClass], ClassBody
    Block,
    ExprStmt,
    If,            // kids: test, consequent, [alternate]
    For,           // kids: init|Empty, test|Empty, update|Empty, body
    ForIn,         // kids: left, right, body
    ForOf,
    While,
    DoWhile,
    Return,
    Throw,
    Try,           // kids: block, [Catch], [finalizer Block]
    Catch,         // kids: [param], body
    Switch,        // kids: discriminant, Case...
    Case,          // kids: test|Empty, statements...
    Break,
    Continue,
    Labeled,
    Empty,
    Debugger,
    With,
    Import,        // value: module source; kids: ImportSpecifier...
    ImportSpecifier, // value: imported name ("default", "*" or a name); kids: local Identifier
    Export,        // kids: declaration or specifiers; value: source module if any
    // expressions
    Identifier,
    PrivateName,
    This,
    Super,
    StringLiteral,   // value: cooked text; span covers the quotes
    NumberLiteral,   // value: raw text
    BooleanLiteral,
    NullLiteral,
    RegExpLiteral,
    TemplateLiteral, // kids: TemplateElement and expressions interleaved
    TemplateElement, // value: cooked text; span covers raw text only
    TaggedTemplate,  // kids: tag, TemplateLiteral
    ArrayLiteral,    // kids: elements (Empty for holes)
    ObjectLiteral,   // kids: Property|Spread
    Property,        // kids: key, value; flags: Computed, Shorthand, Method, Getter, Setter
    Function,        // function expression; value: name
    Arrow,           // kids: params..., body
    Class,           // class expression
    ClassBody,
    MethodDef,       // kids: key, value
    FieldDef,        // kids: key, [value]
    StaticBlock,
    Body,            // function body: kids statements
    Call,            // kids: callee, args...
    New,             // kids: callee, args...
    ImportCall,
    Member,          // kids: object, property; flags: Computed, Optional
    Unary,           // value: operator
    Update,          // value: operator; flags: Prefix
    Binary,          // value: operator
    Logical,         // value: operator
    Assign,          // value: operator; kids: target, value
    Conditional,
    Sequence,
    Spread,
    Await,
    Yield,
    MetaProperty,
    Paren,
};

std::string_view to_string(NodeKind kind);

namespace flag {
inline constexpr std::uint32_t Computed = 1u << 0;
inline constexpr std::uint32_t Optional = 1u << 1;
inline constexpr std::uint32_t Shorthand = 1u << 2;
inline constexpr std::uint32_t Method = 1u << 3;
inline constexpr std::uint32_t Getter = 1u << 4;
inline constexpr std::uint32_t Setter = 1u << 5;
inline constexpr std::uint32_t Async = 1u << 6;
inline constexpr std::uint32_t Generator = 1u << 7;
inline constexpr std::uint32_t Prefix = 1u << 8;
inline constexpr std::uint32_t Static = 1u << 9;
inline constexpr std::uint32_t Rest = 1u << 10;
/// object literal holding `{a = 1}`, only valid as an assignment pattern
inline constexpr std::uint32_t CoverInit = 1u << 11;
} // namespace flag

struct Node {
    NodeKind kind;
    std::uint32_t flags = 0;
    Span span;
    std::string value;
    std::vector<Node*> kids;

    bool has(std::uint32_t f) const { return (flags & f) != 0; }
};

/// Owns every node of one parsed source. Node pointers stay valid for the
/// lifetime of the Ast (deque storage never relocates).
class Ast {
public:
    Node* make(NodeKind kind, Span span)
    {
        nodes_.push_back(Node {kind, 0, span, {}, {}});
        return &nodes_.back();
    }

    const Node* root() const { return root_; }
    void set_root(Node* n) { root_ = n; }
    std::size_t size() const { return nodes_.size(); }

private:
    std::deque<Node> nodes_;
    Node* root_ = nullptr;
};

/// Pre-order traversal; the visitor returns false to skip a subtree.
template <typename Visitor>
void walk(const Node* n, Visitor&& visit)
{
    if (!n)
        return;
    std::vector<const Node*> stack {n};
    while (!stack.empty()) {
        auto* cur = stack.back();
        stack.pop_back();
        if (!visit(*cur))
            continue;
        for (auto it = cur->kids.rbegin(); it != cur->kids.rend(); ++it)
            if (*it)
                stack.push_back(*it);
    }
}

} // namespace extsleuth::code
