#include "extsleuth/code/parser.hpp"

#include "extsleuth/code/lexer.hpp"

#include <algorithm>
#include <array>

namespace extsleuth::code {

std::string_view to_string(NodeKind kind)
{
    static constexpr std::array<std::string_view, 69> names = {
        "Program", "VarDecl", "Declarator", "FunctionDecl", "ClassDecl", "Block", "ExprStmt", "If", "For",
        "ForIn", "ForOf", "While", "DoWhile", "Return", "Throw", "Try", "Catch", "Switch", "Case", "Break",
        "Continue", "Labeled", "Empty", "Debugger", "With", "Import", "ImportSpecifier", "Export", "Identifier",
        "PrivateName", "This", "Super", "StringLiteral", "NumberLiteral", "BooleanLiteral", "NullLiteral",
        "RegExpLiteral", "TemplateLiteral", "TemplateElement", "TaggedTemplate", "ArrayLiteral", "ObjectLiteral",
        "Property", "Function", "Arrow", "Class", "ClassBody", "MethodDef", "FieldDef", "StaticBlock", "Body",
        "Call", "New", "ImportCall", "Member", "Unary", "Update", "Binary", "Logical", "Assign", "Conditional",
        "Sequence", "Spread", "Await", "Yield", "MetaProperty", "Paren",
    };
    auto i = static_cast<std::size_t>(kind);
    return i < names.size() ? names[i] : "?";
}

namespace {

bool is_reserved(std::string_view w)
{
    static constexpr std::string_view words[] = {
        "break", "case", "catch", "class", "const", "continue", "debugger", "default", "delete", "do",
        "else", "enum", "export", "extends", "false", "finally", "for", "function", "if", "import", "in",
        "instanceof", "new", "null", "return", "super", "switch", "this", "throw", "true", "try", "typeof",
        "var", "void", "while", "with",
    };
    return std::find(std::begin(words), std::end(words), w) != std::end(words);
}

int binary_precedence(std::string_view op, bool noIn)
{
    if (op == "??") return 1;
    if (op == "||") return 2;
    if (op == "&&") return 3;
    if (op == "|") return 4;
    if (op == "^") return 5;
    if (op == "&") return 6;
    if (op == "==" || op == "!=" || op == "===" || op == "!==") return 7;
    if (op == "<" || op == ">" || op == "<=" || op == ">=" || op == "instanceof") return 8;
    if (op == "in") return noIn ? 0 : 8;
    if (op == "<<" || op == ">>" || op == ">>>") return 9;
    if (op == "+" || op == "-") return 10;
    if (op == "*" || op == "/" || op == "%") return 11;
    if (op == "**") return 12;
    return 0;
}

bool is_assign_op(std::string_view op)
{
    static constexpr std::string_view ops[] = {"=", "+=", "-=", "*=", "/=", "%=", "**=", "<<=", ">>=",
                                               ">>>=", "&=", "|=", "^=", "&&=", "||=", "?" "?="};
    return std::find(std::begin(ops), std::end(ops), op) != std::end(ops);
}

struct FnContext {
    bool async = false;
    bool generator = false;
};

class Parser {
public:
    Parser(std::string_view src, std::vector<Token> tokens, Ast& ast)
        : src_(src)
        , toks_(std::move(tokens))
        , ast_(ast)
        , lines_(src)
    {
        // top level behaves like a module body: await is an operator
        ctx_.push_back({true, false});
    }

    Node* program()
    {
        std::vector<Node*> body;
        while (cur().type != TokenType::End)
            body.push_back(statement());
        auto* n = ast_.make(NodeKind::Program, span_of(0, static_cast<std::uint32_t>(src_.size())));
        n->kids = std::move(body);
        return n;
    }

private:
    std::string_view src_;
    std::vector<Token> toks_;
    Ast& ast_;
    LineIndex lines_;
    std::size_t i_ = 0;
    std::size_t depth_ = 0;
    std::vector<FnContext> ctx_;

    struct DepthGuard {
        Parser& p;
        explicit DepthGuard(Parser& parser)
            : p(parser)
        {
            if (++p.depth_ > kMaxParseDepth)
                throw SyntaxError("nesting too deep", p.cur().offset);
        }
        ~DepthGuard() { --p.depth_; }
    };

    // ---- token helpers

    const Token& cur() const { return toks_[i_]; }
    const Token& peek(std::size_t n = 1) const { return toks_[std::min(i_ + n, toks_.size() - 1)]; }
    std::uint32_t start() const { return cur().offset; }

    bool punct(std::string_view p) const { return cur().type == TokenType::Punct && cur().value == p; }
    static bool punct_at(const Token& t, std::string_view p) { return t.type == TokenType::Punct && t.value == p; }
    bool word(std::string_view w) const { return cur().type == TokenType::Identifier && cur().value == w; }
    static bool word_at(const Token& t, std::string_view w)
    {
        return t.type == TokenType::Identifier && t.value == w;
    }

    [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, cur().offset); }

    const Token& advance()
    {
        const Token& t = toks_[i_];
        if (t.type != TokenType::End)
            ++i_;
        return t;
    }

    bool eat(std::string_view p)
    {
        if (punct(p)) {
            advance();
            return true;
        }
        return false;
    }

    void expect(std::string_view p)
    {
        if (!eat(p))
            fail("expected '" + std::string(p) + "'");
    }

    void semicolon()
    {
        if (eat(";"))
            return;
        if (punct("}") || cur().type == TokenType::End || cur().newlineBefore)
            return;
        fail("missing semicolon");
    }

    Span span_of(std::uint32_t from, std::uint32_t to) const
    {
        Span s;
        s.offset = from;
        s.length = to > from ? to - from : 0;
        s.line = lines_.line(from);
        s.column = lines_.column(from);
        return s;
    }

    std::uint32_t prev_end() const
    {
        if (i_ == 0)
            return 0;
        auto& t = toks_[i_ - 1];
        return t.offset + t.length;
    }

    Node* make(NodeKind k, std::uint32_t from, std::vector<Node*> kids = {}, std::string value = {},
               std::uint32_t flags = 0)
    {
        auto* n = ast_.make(k, span_of(from, prev_end()));
        n->kids = std::move(kids);
        n->value = std::move(value);
        n->flags = flags;
        return n;
    }

    bool in_async() const { return ctx_.back().async; }
    bool in_generator() const { return ctx_.back().generator; }

    std::string binding_identifier()
    {
        if (cur().type != TokenType::Identifier || is_reserved(cur().value))
            fail("expected identifier");
        return advance().value;
    }

    // ---- statements

    bool starts_let_declaration() const
    {
        if (!word("let"))
            return false;
        auto& n = peek();
        return n.type == TokenType::Identifier || punct_at(n, "[") || punct_at(n, "{");
    }

    bool starts_async_function() const
    {
        return word("async") && word_at(peek(), "function") && !peek().newlineBefore;
    }

    Node* statement()
    {
        DepthGuard guard(*this);
        auto from = start();
        if (punct("{"))
            return block();
        if (eat(";"))
            return make(NodeKind::Empty, from);
        if (cur().type == TokenType::Identifier) {
            const auto& w = cur().value;
            if (w == "var" || w == "const" || starts_let_declaration()) {
                auto* d = var_declaration(false);
                semicolon();
                d->span = span_of(from, prev_end());
                return d;
            }
            if (w == "function")
                return function(true, false);
            if (starts_async_function()) {
                advance();
                return function(true, true, from);
            }
            if (w == "class")
                return class_(true);
            if (w == "if")
                return if_statement();
            if (w == "for")
                return for_statement();
            if (w == "while") {
                advance();
                expect("(");
                auto* test = expression();
                expect(")");
                auto* body = statement();
                return make(NodeKind::While, from, {test, body});
            }
            if (w == "do") {
                advance();
                auto* body = statement();
                if (!word("while"))
                    fail("expected 'while'");
                advance();
                expect("(");
                auto* test = expression();
                expect(")");
                eat(";");
                return make(NodeKind::DoWhile, from, {body, test});
            }
            if (w == "return") {
                advance();
                std::vector<Node*> kids;
                if (!punct(";") && !punct("}") && cur().type != TokenType::End && !cur().newlineBefore)
                    kids.push_back(expression());
                semicolon();
                return make(NodeKind::Return, from, std::move(kids));
            }
            if (w == "throw") {
                advance();
                if (cur().newlineBefore)
                    fail("newline after throw");
                auto* e = expression();
                semicolon();
                return make(NodeKind::Throw, from, {e});
            }
            if (w == "try")
                return try_statement();
            if (w == "switch")
                return switch_statement();
            if (w == "break" || w == "continue") {
                auto kind = w == "break" ? NodeKind::Break : NodeKind::Continue;
                advance();
                std::string label;
                if (cur().type == TokenType::Identifier && !cur().newlineBefore && !is_reserved(cur().value))
                    label = advance().value;
                semicolon();
                return make(kind, from, {}, label);
            }
            if (w == "debugger") {
                advance();
                semicolon();
                return make(NodeKind::Debugger, from);
            }
            if (w == "with") {
                advance();
                expect("(");
                auto* obj = expression();
                expect(")");
                auto* body = statement();
                return make(NodeKind::With, from, {obj, body});
            }
            if (w == "import" && !punct_at(peek(), "(") && !punct_at(peek(), "."))
                return import_declaration();
            if (w == "export")
                return export_declaration();
            if (punct_at(peek(), ":") && !is_reserved(w)) {
                auto label = advance().value;
                advance();
                auto* body = statement();
                return make(NodeKind::Labeled, from, {body}, label);
            }
        }
        auto* e = expression();
        semicolon();
        return make(NodeKind::ExprStmt, from, {e});
    }

    Node* block()
    {
        auto from = start();
        expect("{");
        std::vector<Node*> body;
        while (!punct("}")) {
            if (cur().type == TokenType::End)
                fail("unterminated block");
            body.push_back(statement());
        }
        advance();
        return make(NodeKind::Block, from, std::move(body));
    }

    Node* var_declaration(bool noIn)
    {
        auto from = start();
        std::string kind = advance().value;
        std::vector<Node*> decls;
        do {
            auto dfrom = start();
            std::vector<Node*> kids {binding_target()};
            if (eat("="))
                kids.push_back(assignment(noIn));
            decls.push_back(make(NodeKind::Declarator, dfrom, std::move(kids)));
        } while (eat(","));
        return make(NodeKind::VarDecl, from, std::move(decls), kind);
    }

    Node* if_statement()
    {
        auto from = start();
        advance();
        expect("(");
        auto* test = expression();
        expect(")");
        std::vector<Node*> kids {test, statement()};
        if (word("else")) {
            advance();
            kids.push_back(statement());
        }
        return make(NodeKind::If, from, std::move(kids));
    }

    Node* for_statement()
    {
        auto from = start();
        advance();
        bool isAwait = false;
        if (word("await")) {
            advance();
            isAwait = true;
        }
        expect("(");
        Node* init = nullptr;
        auto initFrom = start();
        if (punct(";")) {
            init = nullptr;
        } else if (word("var") || word("const") || starts_let_declaration()) {
            init = var_declaration(true);
        } else {
            init = expression(true);
        }
        if (init && (word("of") || word("in"))) {
            bool of = word("of");
            advance();
            auto* right = of ? assignment() : expression();
            expect(")");
            auto* body = statement();
            return make(of ? NodeKind::ForOf : NodeKind::ForIn, from, {init, right, body}, isAwait ? "await" : "");
        }
        if (isAwait)
            fail("for await requires 'of'");
        if (!init)
            init = make(NodeKind::Empty, initFrom);
        expect(";");
        auto testFrom = start();
        Node* test = punct(";") ? make(NodeKind::Empty, testFrom) : expression();
        expect(";");
        auto updFrom = start();
        Node* update = punct(")") ? make(NodeKind::Empty, updFrom) : expression();
        expect(")");
        auto* body = statement();
        return make(NodeKind::For, from, {init, test, update, body});
    }

    Node* try_statement()
    {
        auto from = start();
        advance();
        std::vector<Node*> kids {block()};
        bool handled = false;
        if (word("catch")) {
            auto cfrom = start();
            advance();
            std::vector<Node*> ckids;
            if (eat("(")) {
                ckids.push_back(binding_target());
                expect(")");
            }
            ckids.push_back(block());
            kids.push_back(make(NodeKind::Catch, cfrom, std::move(ckids)));
            handled = true;
        }
        if (word("finally")) {
            advance();
            kids.push_back(block());
            handled = true;
        }
        if (!handled)
            fail("try without catch or finally");
        return make(NodeKind::Try, from, std::move(kids));
    }

    Node* switch_statement()
    {
        auto from = start();
        advance();
        expect("(");
        std::vector<Node*> kids {expression()};
        expect(")");
        expect("{");
        bool seenDefault = false;
        while (!eat("}")) {
            auto cfrom = start();
            std::vector<Node*> ckids;
            if (word("case")) {
                advance();
                ckids.push_back(expression());
            } else if (word("default")) {
                if (seenDefault)
                    fail("duplicate default");
                seenDefault = true;
                advance();
                ckids.push_back(make(NodeKind::Empty, cfrom));
            } else {
                fail("expected case or default");
            }
            expect(":");
            while (!word("case") && !word("default") && !punct("}")) {
                if (cur().type == TokenType::End)
                    fail("unterminated switch");
                ckids.push_back(statement());
            }
            kids.push_back(make(NodeKind::Case, cfrom, std::move(ckids)));
        }
        return make(NodeKind::Switch, from, std::move(kids));
    }

    std::string module_source()
    {
        if (cur().type != TokenType::String)
            fail("expected module specifier");
        return advance().value;
    }

    std::string module_export_name()
    {
        if (cur().type == TokenType::String || cur().type == TokenType::Identifier)
            return advance().value;
        fail("expected name");
    }

    Node* import_declaration()
    {
        auto from = start();
        advance();
        std::vector<Node*> specs;
        if (cur().type != TokenType::String) {
            if ((cur().type == TokenType::Identifier && !word("from")) || (word("from") && word_at(peek(), "from"))) {
                auto sfrom = start();
                auto local = binding_identifier();
                auto* id = make(NodeKind::Identifier, sfrom, {}, local);
                specs.push_back(make(NodeKind::ImportSpecifier, sfrom, {id}, "default"));
                if (!eat(","))
                    goto from_clause;
            }
            if (punct("*")) {
                auto sfrom = start();
                advance();
                if (!word("as"))
                    fail("expected 'as'");
                advance();
                auto lfrom = start();
                auto local = binding_identifier();
                auto* id = make(NodeKind::Identifier, lfrom, {}, local);
                specs.push_back(make(NodeKind::ImportSpecifier, sfrom, {id}, "*"));
            } else if (eat("{")) {
                while (!eat("}")) {
                    auto sfrom = start();
                    auto imported = module_export_name();
                    std::string local = imported;
                    auto lfrom = sfrom;
                    if (word("as")) {
                        advance();
                        lfrom = start();
                        local = binding_identifier();
                    } else if (is_reserved(imported)) {
                        fail("reserved word in import");
                    }
                    auto* id = make(NodeKind::Identifier, lfrom, {}, local);
                    specs.push_back(make(NodeKind::ImportSpecifier, sfrom, {id}, imported));
                    if (!punct("}"))
                        expect(",");
                }
            } else {
                fail("malformed import");
            }
        from_clause:
            if (!word("from"))
                fail("expected 'from'");
            advance();
        }
        auto source = module_source();
        semicolon();
        return make(NodeKind::Import, from, std::move(specs), source);
    }

    Node* export_declaration()
    {
        auto from = start();
        advance();
        if (word("default")) {
            advance();
            Node* decl;
            if (word("function"))
                decl = function(true, false, start(), true);
            else if (starts_async_function()) {
                auto f = start();
                advance();
                decl = function(true, true, f, true);
            } else if (word("class"))
                decl = class_(true, true);
            else {
                decl = assignment();
                semicolon();
            }
            return make(NodeKind::Export, from, {decl}, "default");
        }
        if (punct("*")) {
            advance();
            std::vector<Node*> kids;
            if (word("as")) {
                advance();
                auto nfrom = start();
                kids.push_back(make(NodeKind::Identifier, nfrom, {}, module_export_name()));
            }
            if (!word("from"))
                fail("expected 'from'");
            advance();
            auto source = module_source();
            semicolon();
            return make(NodeKind::Export, from, std::move(kids), source);
        }
        if (eat("{")) {
            std::vector<Node*> kids;
            while (!eat("}")) {
                auto sfrom = start();
                auto local = module_export_name();
                std::string exported = local;
                if (word("as")) {
                    advance();
                    exported = module_export_name();
                }
                auto* id = make(NodeKind::Identifier, sfrom, {}, local);
                kids.push_back(make(NodeKind::ImportSpecifier, sfrom, {id}, exported));
                if (!punct("}"))
                    expect(",");
            }
            std::string source;
            if (word("from")) {
                advance();
                source = module_source();
            }
            semicolon();
            return make(NodeKind::Export, from, std::move(kids), source);
        }
        if (word("var") || word("let") || word("const") || word("function") || word("class") ||
            starts_async_function())
            return make(NodeKind::Export, from, {statement()});
        fail("malformed export");
    }

    // ---- functions and classes

    Node* params_and_body(std::uint32_t from, NodeKind kind, std::string name, bool async, bool generator)
    {
        ctx_.push_back({async, generator});
        expect("(");
        std::vector<Node*> kids = params_until_close();
        kids.push_back(function_body());
        ctx_.pop_back();
        std::uint32_t flags = (async ? flag::Async : 0) | (generator ? flag::Generator : 0);
        return make(kind, from, std::move(kids), std::move(name), flags);
    }

    // Assumes "(" is consumed; consumes ")".
    std::vector<Node*> params_until_close()
    {
        std::vector<Node*> params;
        while (!eat(")")) {
            params.push_back(binding_element());
            bool rest = params.back()->kind == NodeKind::Spread;
            if (!punct(")")) {
                if (rest)
                    fail("rest parameter must be last");
                expect(",");
            }
        }
        return params;
    }

    Node* function_body()
    {
        auto from = start();
        expect("{");
        std::vector<Node*> body;
        while (!punct("}")) {
            if (cur().type == TokenType::End)
                fail("unterminated function body");
            body.push_back(statement());
        }
        advance();
        return make(NodeKind::Body, from, std::move(body));
    }

    Node* function(bool declaration, bool async, std::uint32_t from = UINT32_MAX, bool nameOptional = false)
    {
        if (from == UINT32_MAX)
            from = start();
        advance(); // function
        bool generator = eat("*");
        std::string name;
        if (cur().type == TokenType::Identifier && !punct("("))
            name = binding_identifier();
        else if (declaration && !nameOptional)
            fail("function name required");
        return params_and_body(from, declaration ? NodeKind::FunctionDecl : NodeKind::Function, name, async,
                               generator);
    }

    Node* class_(bool declaration, bool nameOptional = false)
    {
        auto from = start();
        advance();
        std::string name;
        if (cur().type == TokenType::Identifier && !word("extends"))
            name = binding_identifier();
        else if (declaration && !nameOptional)
            fail("class name required");
        std::vector<Node*> kids;
        if (word("extends")) {
            advance();
            kids.push_back(lhs_expression());
        }
        kids.push_back(class_body());
        return make(declaration ? NodeKind::ClassDecl : NodeKind::Class, from, std::move(kids), name);
    }

    Node* class_body()
    {
        auto from = start();
        expect("{");
        std::vector<Node*> members;
        while (!eat("}")) {
            if (eat(";"))
                continue;
            if (cur().type == TokenType::End)
                fail("unterminated class body");
            auto mfrom = start();
            std::uint32_t flags = 0;
            if (word("static") && !punct_at(peek(), "(") && !punct_at(peek(), "=")) {
                advance();
                flags |= flag::Static;
                if (punct("{")) {
                    ctx_.push_back({false, false});
                    auto* b = block();
                    ctx_.pop_back();
                    members.push_back(make(NodeKind::StaticBlock, mfrom, b->kids));
                    continue;
                }
            }
            flags |= method_modifiers();
            auto* key = property_key(true);
            if (punct("(")) {
                auto* fn = params_and_body(start(), NodeKind::Function, "", flags & flag::Async,
                                           flags & flag::Generator);
                members.push_back(make(NodeKind::MethodDef, mfrom, {key, fn}, "", flags | flag::Method));
                continue;
            }
            if (flags & (flag::Async | flag::Generator | flag::Getter | flag::Setter))
                fail("expected method");
            std::vector<Node*> kids {key};
            if (eat("=")) {
                ctx_.push_back({false, false});
                kids.push_back(assignment());
                ctx_.pop_back();
            }
            semicolon();
            members.push_back(make(NodeKind::FieldDef, mfrom, std::move(kids), "", flags));
        }
        return make(NodeKind::ClassBody, from, std::move(members));
    }

    // async / get / set / * prefixes on object and class members
    std::uint32_t method_modifiers()
    {
        std::uint32_t flags = 0;
        auto is_key_end = [](const Token& t) {
            return punct_at(t, ",") || punct_at(t, ":") || punct_at(t, "(") || punct_at(t, "}") ||
                   punct_at(t, "=") || punct_at(t, ";");
        };
        if (word("async") && !is_key_end(peek()) && !peek().newlineBefore) {
            advance();
            flags |= flag::Async;
        }
        if (eat("*"))
            flags |= flag::Generator;
        if (!(flags & (flag::Async | flag::Generator)) && (word("get") || word("set")) && !is_key_end(peek())) {
            flags |= word("get") ? flag::Getter : flag::Setter;
            advance();
        }
        return flags;
    }

    Node* property_key(bool allowPrivate)
    {
        auto from = start();
        if (eat("[")) {
            auto* e = assignment();
            expect("]");
            e->flags |= flag::Computed;
            return e;
        }
        switch (cur().type) {
        case TokenType::Identifier:
            return make_leaf(NodeKind::Identifier, from);
        case TokenType::String:
            return make_leaf(NodeKind::StringLiteral, from);
        case TokenType::Number:
            return make_leaf(NodeKind::NumberLiteral, from);
        case TokenType::PrivateName:
            if (allowPrivate)
                return make_leaf(NodeKind::PrivateName, from);
            [[fallthrough]];
        default:
            fail("expected property name");
        }
    }

    Node* make_leaf(NodeKind kind, std::uint32_t from)
    {
        auto value = advance().value;
        return make(kind, from, {}, std::move(value));
    }

    // ---- binding patterns

    Node* binding_target()
    {
        auto from = start();
        if (punct("["))
            return array_pattern();
        if (punct("{"))
            return object_pattern();
        auto name = binding_identifier();
        return make(NodeKind::Identifier, from, {}, name);
    }

    // target with optional default, or a rest element
    Node* binding_element()
    {
        auto from = start();
        if (eat("...")) {
            auto* t = binding_target();
            return make(NodeKind::Spread, from, {t}, "", flag::Rest);
        }
        auto* t = binding_target();
        if (eat("=")) {
            auto* init = assignment();
            return make(NodeKind::Assign, from, {t, init}, "=");
        }
        return t;
    }

    Node* array_pattern()
    {
        auto from = start();
        expect("[");
        std::vector<Node*> elems;
        while (!eat("]")) {
            if (punct(",")) {
                auto hole = start();
                advance();
                elems.push_back(make(NodeKind::Empty, hole));
                continue;
            }
            elems.push_back(binding_element());
            if (!punct("]"))
                expect(",");
        }
        return make(NodeKind::ArrayLiteral, from, std::move(elems));
    }

    Node* object_pattern()
    {
        auto from = start();
        expect("{");
        std::vector<Node*> props;
        while (!eat("}")) {
            auto pfrom = start();
            if (eat("...")) {
                auto* t = binding_target();
                props.push_back(make(NodeKind::Spread, pfrom, {t}, "", flag::Rest));
            } else {
                auto* key = property_key(false);
                if (eat(":")) {
                    auto* value = binding_element();
                    props.push_back(make(NodeKind::Property, pfrom, {key, value}));
                } else {
                    if (key->kind != NodeKind::Identifier || key->has(flag::Computed) || is_reserved(key->value))
                        fail("expected ':'");
                    Node* value = key;
                    if (eat("=")) {
                        auto* init = assignment();
                        value = make(NodeKind::Assign, pfrom, {key, init}, "=");
                    }
                    props.push_back(make(NodeKind::Property, pfrom, {key, value}, "", flag::Shorthand));
                }
            }
            if (!punct("}"))
                expect(",");
        }
        return make(NodeKind::ObjectLiteral, from, std::move(props));
    }

    // ---- expressions

    Node* expression(bool noIn = false)
    {
        auto from = start();
        auto* first = assignment(noIn);
        if (!punct(","))
            return first;
        std::vector<Node*> items {first};
        while (eat(","))
            items.push_back(assignment(noIn));
        return make(NodeKind::Sequence, from, std::move(items));
    }

    // Index of the ")" matching the "(" at index `open`, or npos.
    std::size_t matching_paren(std::size_t open) const
    {
        int depth = 0;
        for (std::size_t j = open; j < toks_.size(); ++j) {
            auto& t = toks_[j];
            if (t.type != TokenType::Punct)
                continue;
            if (t.value == "(" || t.value == "[" || t.value == "{")
                ++depth;
            else if (t.value == ")" || t.value == "]" || t.value == "}") {
                if (--depth == 0)
                    return t.value == ")" ? j : std::string::npos;
            }
        }
        return std::string::npos;
    }

    bool arrow_after(std::size_t idx) const
    {
        return idx + 1 < toks_.size() && punct_at(toks_[idx + 1], "=>") && !toks_[idx + 1].newlineBefore;
    }

    Node* arrow_body(std::uint32_t from, std::vector<Node*> params, bool async, bool noIn)
    {
        expect("=>");
        ctx_.push_back({async, false});
        Node* body;
        if (punct("{"))
            body = function_body();
        else
            body = assignment(noIn);
        ctx_.pop_back();
        params.push_back(body);
        return make(NodeKind::Arrow, from, std::move(params), "", async ? flag::Async : 0);
    }

    Node* try_arrow(bool noIn)
    {
        auto from = start();
        bool async = false;
        std::size_t j = i_;
        if (word("async") && !peek().newlineBefore &&
            (peek().type == TokenType::Identifier || punct_at(peek(), "("))) {
            async = true;
            ++j;
        }
        auto& t = toks_[j];
        if (t.type == TokenType::Identifier && arrow_after(j)) {
            if (is_reserved(t.value))
                return nullptr;
            if (async)
                advance();
            auto pfrom = start();
            auto name = advance().value;
            std::vector<Node*> params {make(NodeKind::Identifier, pfrom, {}, name)};
            return arrow_body(from, std::move(params), async, noIn);
        }
        if (punct_at(t, "(")) {
            auto close = matching_paren(j);
            if (close == std::string::npos || !arrow_after(close))
                return nullptr;
            if (async)
                advance();
            advance(); // (
            ctx_.push_back({async, false});
            auto params = params_until_close();
            ctx_.pop_back();
            return arrow_body(from, std::move(params), async, noIn);
        }
        return nullptr;
    }

    Node* assignment(bool noIn = false)
    {
        DepthGuard guard(*this);
        if (word("yield") && in_generator())
            return yield_expression(noIn);
        if (auto* arrow = try_arrow(noIn))
            return arrow;
        auto from = start();
        auto* left = conditional(noIn);
        if (cur().type == TokenType::Punct && is_assign_op(cur().value)) {
            if (!valid_assign_target(left, cur().value == "="))
                fail("invalid assignment target");
            auto op = advance().value;
            auto* right = assignment(noIn);
            return make(NodeKind::Assign, from, {left, right}, op);
        }
        if (has_cover_init(left))
            fail("shorthand property default outside a pattern");
        return left;
    }

    static bool has_cover_init(const Node* n)
    {
        if (n->kind != NodeKind::ObjectLiteral && n->kind != NodeKind::ArrayLiteral)
            return false;
        if (n->has(flag::CoverInit))
            return true;
        for (auto* k : n->kids) {
            auto* v = k->kind == NodeKind::Property ? k->kids[1] : k;
            if (has_cover_init(v))
                return true;
        }
        return false;
    }

    static bool valid_assign_target(const Node* n, bool plain)
    {
        switch (n->kind) {
        case NodeKind::Identifier:
        case NodeKind::Member:
            return !n->has(flag::Optional);
        case NodeKind::ArrayLiteral:
        case NodeKind::ObjectLiteral:
            return plain;
        case NodeKind::Paren:
            return valid_assign_target(n->kids[0], false);
        default:
            return false;
        }
    }

    Node* yield_expression(bool noIn)
    {
        auto from = start();
        advance();
        std::uint32_t flags = 0;
        std::vector<Node*> kids;
        if (!cur().newlineBefore) {
            if (eat("*")) {
                flags = flag::Generator;
                kids.push_back(assignment(noIn));
            } else if (!punct(")") && !punct("]") && !punct("}") && !punct(",") && !punct(";") &&
                       !punct(":") && cur().type != TokenType::End && !word("in") && !word("of") &&
                       cur().type != TokenType::TemplateMiddle && cur().type != TokenType::TemplateTail) {
                kids.push_back(assignment(noIn));
            }
        }
        return make(NodeKind::Yield, from, std::move(kids), "", flags);
    }

    Node* conditional(bool noIn)
    {
        auto from = start();
        auto* test = binary(0, noIn);
        if (!eat("?"))
            return test;
        auto* yes = assignment(false);
        expect(":");
        auto* no = assignment(noIn);
        return make(NodeKind::Conditional, from, {test, yes, no});
    }

    std::string_view binary_op() const
    {
        auto& t = cur();
        if (t.type == TokenType::Punct)
            return t.value;
        if (t.type == TokenType::Identifier && (t.value == "in" || t.value == "instanceof"))
            return t.value;
        return {};
    }

    Node* binary(int minPrec, bool noIn)
    {
        auto from = start();
        Node* left;
        if (cur().type == TokenType::PrivateName && word_at(peek(), "in")) {
            left = make_leaf(NodeKind::PrivateName, from);
        } else {
            left = unary();
        }
        while (true) {
            auto op = std::string(binary_op());
            int prec = op.empty() ? 0 : binary_precedence(op, noIn);
            if (prec == 0 || prec <= minPrec)
                break;
            if (op == "**" && (left->kind == NodeKind::Unary || left->kind == NodeKind::Await))
                fail("unparenthesized unary before '**'");
            advance();
            // ** is right-associative
            auto* right = binary(op == "**" ? prec - 1 : prec, noIn);
            bool logical = op == "&&" || op == "||" || op == "??";
            if (logical) {
                // ?? cannot be mixed with && or || without parentheses
                auto mixes = [&](const Node* n) {
                    return n->kind == NodeKind::Logical && ((op == "??") != (n->value == "??"));
                };
                if (mixes(left) || mixes(right))
                    fail("cannot mix ?? with && or ||");
            }
            left = make(logical ? NodeKind::Logical : NodeKind::Binary, from, {left, right}, op);
        }
        return left;
    }

    Node* unary()
    {
        DepthGuard guard(*this);
        auto from = start();
        auto& t = cur();
        if (t.type == TokenType::Punct &&
            (t.value == "!" || t.value == "~" || t.value == "+" || t.value == "-")) {
            auto op = advance().value;
            auto* arg = unary();
            return make(NodeKind::Unary, from, {arg}, op);
        }
        if (t.type == TokenType::Punct && (t.value == "++" || t.value == "--")) {
            auto op = advance().value;
            auto* arg = unary();
            if (!valid_assign_target(arg, false))
                fail("invalid update target");
            return make(NodeKind::Update, from, {arg}, op, flag::Prefix);
        }
        if (t.type == TokenType::Identifier && (t.value == "typeof" || t.value == "void" || t.value == "delete")) {
            auto op = advance().value;
            auto* arg = unary();
            return make(NodeKind::Unary, from, {arg}, op);
        }
        if (word("await") && in_async()) {
            advance();
            auto* arg = unary();
            return make(NodeKind::Await, from, {arg});
        }
        auto* e = lhs_expression();
        if ((punct("++") || punct("--")) && !cur().newlineBefore) {
            if (!valid_assign_target(e, false))
                fail("invalid update target");
            auto op = advance().value;
            return make(NodeKind::Update, from, {e}, op);
        }
        return e;
    }

    std::vector<Node*> arguments()
    {
        expect("(");
        std::vector<Node*> args;
        while (!eat(")")) {
            auto from = start();
            if (eat("...")) {
                auto* a = assignment();
                args.push_back(make(NodeKind::Spread, from, {a}));
            } else {
                args.push_back(assignment());
            }
            if (!punct(")"))
                expect(",");
        }
        return args;
    }

    Node* member_name(std::uint32_t from, Node* object, std::uint32_t flags)
    {
        auto pfrom = start();
        Node* prop;
        if (cur().type == TokenType::Identifier)
            prop = make_leaf(NodeKind::Identifier, pfrom);
        else if (cur().type == TokenType::PrivateName)
            prop = make_leaf(NodeKind::PrivateName, pfrom);
        else
            fail("expected property name");
        return make(NodeKind::Member, from, {object, prop}, "", flags);
    }

    Node* new_expression()
    {
        auto from = start();
        advance(); // new
        if (eat(".")) {
            if (!word("target"))
                fail("expected new.target");
            advance();
            return make(NodeKind::MetaProperty, from, {}, "new.target");
        }
        Node* callee = word("new") ? new_expression() : member_chain(false);
        std::vector<Node*> kids {callee};
        if (punct("(")) {
            auto args = arguments();
            kids.insert(kids.end(), args.begin(), args.end());
        }
        return make(NodeKind::New, from, std::move(kids));
    }

    Node* lhs_expression() { return member_chain(true); }

    Node* member_chain(bool allowCall)
    {
        auto from = start();
        Node* e;
        if (word("new")) {
            e = new_expression();
        } else if (word("super")) {
            e = make_leaf(NodeKind::Super, from);
            if (!punct("(") && !punct(".") && !punct("["))
                fail("unexpected super");
        } else if (word("import") && punct_at(peek(), "(")) {
            advance();
            expect("(");
            auto* arg = assignment();
            eat(",");
            expect(")");
            e = make(NodeKind::ImportCall, from, {arg});
        } else if (word("import") && punct_at(peek(), ".")) {
            advance();
            advance();
            if (!word("meta"))
                fail("expected import.meta");
            advance();
            e = make(NodeKind::MetaProperty, from, {}, "import.meta");
        } else {
            e = primary();
        }
        bool optionalChain = false;
        while (true) {
            if (eat(".")) {
                e = member_name(from, e, 0);
            } else if (punct("?.")) {
                if (!allowCall)
                    fail("optional chain in new");
                advance();
                optionalChain = true;
                if (punct("(")) {
                    auto args = arguments();
                    std::vector<Node*> kids {e};
                    kids.insert(kids.end(), args.begin(), args.end());
                    e = make(NodeKind::Call, from, std::move(kids), "", flag::Optional);
                } else if (eat("[")) {
                    auto* prop = expression();
                    expect("]");
                    e = make(NodeKind::Member, from, {e, prop}, "", flag::Computed | flag::Optional);
                } else {
                    e = member_name(from, e, flag::Optional);
                }
            } else if (eat("[")) {
                auto* prop = expression();
                expect("]");
                e = make(NodeKind::Member, from, {e, prop}, "", flag::Computed);
            } else if (punct("(") && allowCall) {
                auto args = arguments();
                std::vector<Node*> kids {e};
                kids.insert(kids.end(), args.begin(), args.end());
                e = make(NodeKind::Call, from, std::move(kids));
            } else if (cur().type == TokenType::TemplateNoSub || cur().type == TokenType::TemplateHead) {
                if (optionalChain)
                    fail("tagged template in optional chain");
                auto* tpl = template_literal();
                e = make(NodeKind::TaggedTemplate, from, {e, tpl});
            } else {
                break;
            }
        }
        return e;
    }

    Node* template_element()
    {
        auto& t = advance();
        auto* n = ast_.make(NodeKind::TemplateElement, span_of(t.innerOffset, t.innerOffset + t.innerLength));
        n->value = t.value;
        return n;
    }

    Node* template_literal()
    {
        auto from = start();
        std::vector<Node*> kids;
        if (cur().type == TokenType::TemplateNoSub) {
            kids.push_back(template_element());
            return make(NodeKind::TemplateLiteral, from, std::move(kids));
        }
        kids.push_back(template_element()); // head
        while (true) {
            kids.push_back(expression());
            if (cur().type == TokenType::TemplateMiddle) {
                kids.push_back(template_element());
            } else if (cur().type == TokenType::TemplateTail) {
                kids.push_back(template_element());
                break;
            } else {
                fail("unterminated template substitution");
            }
        }
        return make(NodeKind::TemplateLiteral, from, std::move(kids));
    }

    Node* primary()
    {
        auto from = start();
        auto& t = cur();
        switch (t.type) {
        case TokenType::Number:
            return make_leaf(NodeKind::NumberLiteral, from);
        case TokenType::String:
            return make_leaf(NodeKind::StringLiteral, from);
        case TokenType::RegExp:
            return make_leaf(NodeKind::RegExpLiteral, from);
        case TokenType::TemplateNoSub:
        case TokenType::TemplateHead:
            return template_literal();
        case TokenType::Identifier: {
            const auto& w = t.value;
            if (w == "this")
                return make_leaf(NodeKind::This, from);
            if (w == "null")
                return make_leaf(NodeKind::NullLiteral, from);
            if (w == "true" || w == "false")
                return make_leaf(NodeKind::BooleanLiteral, from);
            if (w == "function")
                return function(false, false);
            if (starts_async_function()) {
                advance();
                return function(false, true, from);
            }
            if (w == "class")
                return class_(false);
            if (is_reserved(w))
                fail("unexpected keyword '" + w + "'");
            return make_leaf(NodeKind::Identifier, from);
        }
        case TokenType::Punct:
            if (t.value == "(") {
                advance();
                auto* e = expression();
                expect(")");
                return make(NodeKind::Paren, from, {e});
            }
            if (t.value == "[")
                return array_literal();
            if (t.value == "{")
                return object_literal();
            break;
        default:
            break;
        }
        fail("unexpected token");
    }

    Node* array_literal()
    {
        auto from = start();
        expect("[");
        std::vector<Node*> elems;
        while (!eat("]")) {
            auto efrom = start();
            if (punct(",")) {
                advance();
                elems.push_back(make(NodeKind::Empty, efrom));
                continue;
            }
            if (eat("...")) {
                auto* a = assignment();
                elems.push_back(make(NodeKind::Spread, efrom, {a}));
            } else {
                elems.push_back(assignment());
            }
            if (!punct("]"))
                expect(",");
        }
        return make(NodeKind::ArrayLiteral, from, std::move(elems));
    }

    Node* object_literal()
    {
        auto from = start();
        expect("{");
        bool coverInit = false;
        std::vector<Node*> props;
        while (!eat("}")) {
            auto pfrom = start();
            if (eat("...")) {
                auto* a = assignment();
                props.push_back(make(NodeKind::Spread, pfrom, {a}));
            } else {
                auto flags = method_modifiers();
                auto* key = property_key(false);
                if (punct("(")) {
                    auto* fn = params_and_body(start(), NodeKind::Function, "", flags & flag::Async,
                                               flags & flag::Generator);
                    props.push_back(make(NodeKind::Property, pfrom, {key, fn}, "", flags | flag::Method));
                } else if (flags) {
                    fail("expected method");
                } else if (eat(":")) {
                    auto* value = assignment();
                    props.push_back(make(NodeKind::Property, pfrom, {key, value}));
                } else if (key->kind == NodeKind::Identifier && !key->has(flag::Computed)) {
                    if (is_reserved(key->value))
                        fail("reserved word as shorthand property");
                    Node* value = key;
                    // cover grammar for destructuring defaults: ({a = 1} = obj)
                    if (eat("=")) {
                        auto* init = assignment();
                        value = make(NodeKind::Assign, pfrom, {key, init}, "=");
                        coverInit = true;
                    }
                    props.push_back(make(NodeKind::Property, pfrom, {key, value}, "", flag::Shorthand));
                } else {
                    fail("expected ':'");
                }
            }
            if (!punct("}"))
                expect(",");
        }
        return make(NodeKind::ObjectLiteral, from, std::move(props), "", coverInit ? flag::CoverInit : 0);
    }
};

} // namespace

ParseResult parse_js(std::string_view src)
{
    ParseResult result;
    result.ast = std::make_unique<Ast>();
    try {
        auto tokens = tokenize(src);
        Parser p(src, std::move(tokens), *result.ast);
        result.ast->set_root(p.program());
        result.ok = true;
    } catch (const SyntaxError& e) {
        result.ok = false;
        result.error = e.what();
        LineIndex lines(src);
        auto off = std::min<std::uint32_t>(e.offset(), static_cast<std::uint32_t>(src.size()));
        result.errorAt = Span {off, 0, lines.line(off), lines.column(off)};
        result.ast->set_root(nullptr);
    }
    return result;
}

} // namespace extsleuth::code
