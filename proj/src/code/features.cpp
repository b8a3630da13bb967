#include "extsleuth/code/features.hpp"

#include "extsleuth/code/lexer.hpp"
#include "extsleuth/code/parser.hpp"
#include "extsleuth/common/base64.hpp"
#include "extsleuth/common/hash.hpp"
#include "extsleuth/common/text.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <unordered_map>

namespace extsleuth::code {

std::string_view to_string(LiteralClass c)
{
    switch (c) {
    case LiteralClass::Url: return "url";
    case LiteralClass::Base64Candidate: return "base64-candidate";
    case LiteralClass::Plain: break;
    }
    return "plain";
}

std::string_view to_string(InvisibleCategory c)
{
    switch (c) {
    case InvisibleCategory::BidiControl: return "bidi-control";
    case InvisibleCategory::Bom: return "bom";
    case InvisibleCategory::ZeroWidth: break;
    }
    return "zero-width";
}

std::string_view SourceUnit::slice(const Span& s) const
{
    if (s.offset >= text.size())
        return {};
    return std::string_view(text).substr(s.offset, s.length);
}

const SourceUnit* CodeModel::find(std::string_view path) const
{
    auto it = std::lower_bound(units.begin(), units.end(), path,
                               [](const SourceUnit& u, std::string_view p) { return u.path < p; });
    return it != units.end() && it->path == path ? &*it : nullptr;
}

ParsedSource parse_source(std::string_view text)
{
    ParsedSource out;
    if (text.size() > kMaxParseBytes) {
        out.error = "source exceeds parse size limit";
        return out;
    }
    auto r = parse_js(text);
    if (r.ok)
        out.ast = std::shared_ptr<const Ast>(std::move(r.ast));
    else
        out.error = r.error + " at " + std::to_string(r.errorAt.line) + ":" + std::to_string(r.errorAt.column);
    return out;
}

namespace {

bool is_comparison_op(std::string_view op)
{
    return op == "<" || op == ">" || op == "<=" || op == ">=" || op == "==" || op == "===" || op == "!=" ||
           op == "!==";
}

std::string strip_global_prefix(std::string path)
{
    static constexpr std::string_view prefixes[] = {"window.", "globalThis.", "self."};
    bool again = true;
    while (again) {
        again = false;
        for (auto p : prefixes) {
            if (text::starts_with(path, p) && path.size() > p.size()) {
                path.erase(0, p.size());
                again = true;
            }
        }
    }
    return path;
}

std::string strip_node_prefix(std::string_view module)
{
    if (text::starts_with(module, "node:"))
        module.remove_prefix(5);
    return std::string(module);
}

const Node* unparen(const Node* n)
{
    while (n && n->kind == NodeKind::Paren && !n->kids.empty())
        n = n->kids[0];
    return n;
}

// require('x') with a single literal argument
const Node* require_arg(const Node* n)
{
    n = unparen(n);
    if (!n || n->kind != NodeKind::Call || n->kids.size() != 2)
        return nullptr;
    auto* callee = n->kids[0];
    auto* arg = n->kids[1];
    if (callee->kind != NodeKind::Identifier || callee->value != "require")
        return nullptr;
    if (arg->kind == NodeKind::StringLiteral)
        return arg;
    if (arg->kind == NodeKind::TemplateLiteral && arg->kids.size() == 1)
        return arg->kids[0];
    return nullptr;
}

// Static property name of a member expression, if any.
std::optional<std::string> member_property(const Node* m)
{
    auto* prop = m->kids[1];
    if (!m->has(flag::Computed))
        return prop->kind == NodeKind::PrivateName ? "#" + prop->value : prop->value;
    auto* key = unparen(prop);
    if (key->kind == NodeKind::StringLiteral)
        return key->value;
    if (key->kind == NodeKind::TemplateLiteral && key->kids.size() == 1)
        return key->kids[0]->value;
    return std::nullopt;
}

std::optional<std::string> written_path(const Node* n)
{
    n = unparen(n);
    switch (n->kind) {
    case NodeKind::Identifier:
        return n->value;
    case NodeKind::This:
        return std::string("this");
    case NodeKind::Member: {
        auto base = written_path(n->kids[0]);
        auto prop = member_property(n);
        if (!base || !prop)
            return std::nullopt;
        return *base + "." + *prop;
    }
    case NodeKind::Call:
        if (auto* a = require_arg(n))
            return "require('" + a->value + "')";
        return std::nullopt;
    default:
        return std::nullopt;
    }
}

// Single-assignment aliases of require()/import bindings.
class AliasTable {
public:
    explicit AliasTable(const Ast& ast)
    {
        std::unordered_map<std::string, int> bindings;
        auto bind = [&](const std::string& name) { ++bindings[name]; };
        std::function<void(const Node*)> bind_pattern = [&](const Node* p) {
            p = unparen(p);
            switch (p->kind) {
            case NodeKind::Identifier: bind(p->value); break;
            case NodeKind::Assign: bind_pattern(p->kids[0]); break;
            case NodeKind::Spread: bind_pattern(p->kids[0]); break;
            case NodeKind::ArrayLiteral:
                for (auto* k : p->kids)
                    if (k->kind != NodeKind::Empty)
                        bind_pattern(k);
                break;
            case NodeKind::ObjectLiteral:
                for (auto* k : p->kids)
                    bind_pattern(k->kind == NodeKind::Property ? k->kids[1] : k);
                break;
            default: break;
            }
        };

        walk(ast.root(), [&](const Node& n) {
            switch (n.kind) {
            case NodeKind::Declarator:
                bind_pattern(n.kids[0]);
                if (n.kids.size() == 2)
                    collect_declarator(n.kids[0], n.kids[1]);
                break;
            case NodeKind::Assign:
                if (unparen(n.kids[0])->kind == NodeKind::Identifier)
                    bind(unparen(n.kids[0])->value);
                break;
            case NodeKind::FunctionDecl:
            case NodeKind::ClassDecl:
                if (!n.value.empty())
                    bind(n.value);
                break;
            case NodeKind::Import:
                for (auto* spec : n.kids) {
                    auto& local = spec->kids[0]->value;
                    bind(local);
                    auto module = strip_node_prefix(n.value);
                    bool whole = spec->value == "*" || spec->value == "default";
                    aliases_[local] = {nullptr, whole ? module : module + "." + spec->value};
                }
                break;
            default: break;
            }
            return true;
        });
        for (auto& [name, count] : bindings)
            if (count > 1)
                aliases_.erase(name);
    }

    /// Resolves a callee to its module-qualified path; `fromModule` reports
    /// whether the root is a require()/import binding.
    std::optional<std::string> resolve(const Node* n, bool* fromModule = nullptr, int depth = 0) const
    {
        bool dummy = false;
        bool& mod = fromModule ? *fromModule : dummy;
        n = unparen(n);
        if (depth > 16)
            return std::nullopt;
        switch (n->kind) {
        case NodeKind::Identifier: {
            auto it = aliases_.find(n->value);
            if (it == aliases_.end())
                return n->value;
            auto& a = it->second;
            if (!a.init) {
                mod = true;
                return a.suffix;
            }
            bool initMod = false;
            auto base = resolve(a.init, &initMod, depth + 1);
            if (!base || !initMod)
                return n->value;
            mod = true;
            return a.suffix.empty() ? *base : *base + "." + a.suffix;
        }
        case NodeKind::This:
            return std::string("this");
        case NodeKind::Member: {
            auto base = resolve(n->kids[0], &mod, depth + 1);
            auto prop = member_property(n);
            if (!base || !prop)
                return std::nullopt;
            return *base + "." + *prop;
        }
        case NodeKind::Call:
            if (auto* a = require_arg(n)) {
                mod = true;
                return strip_node_prefix(a->value);
            }
            return std::nullopt;
        default:
            return std::nullopt;
        }
    }

    const Node* constant_init(const std::string& name) const
    {
        auto it = constants_.find(name);
        return it == constants_.end() ? nullptr : it->second;
    }

private:
    struct Alias {
        const Node* init; // null for import bindings
        std::string suffix;
    };
    std::unordered_map<std::string, Alias> aliases_;
    std::unordered_map<std::string, const Node*> constants_;

    void collect_declarator(const Node* target, const Node* init)
    {
        target = unparen(target);
        if (target->kind == NodeKind::Identifier) {
            aliases_[target->value] = {init, ""};
            constants_[target->value] = init;
            return;
        }
        if (target->kind != NodeKind::ObjectLiteral)
            return;
        for (auto* prop : target->kids) {
            if (prop->kind != NodeKind::Property || prop->has(flag::Computed))
                continue;
            auto* key = prop->kids[0];
            auto* value = unparen(prop->kids[1]);
            if (value->kind == NodeKind::Assign)
                value = unparen(value->kids[0]);
            if (value->kind != NodeKind::Identifier)
                continue;
            if (key->kind == NodeKind::Identifier || key->kind == NodeKind::StringLiteral)
                aliases_[value->value] = {init, key->value};
        }
    }
};

void string_leaves(const Node* n, const AliasTable& aliases, std::vector<std::string>& out, int depth = 0)
{
    n = unparen(n);
    if (depth > 64)
        return;
    switch (n->kind) {
    case NodeKind::StringLiteral:
        out.push_back(std::string(text::utf8_prefix(n->value, kMaxArgLiteralBytes)));
        break;
    case NodeKind::TemplateLiteral:
        for (auto* k : n->kids) {
            if (k->kind == NodeKind::TemplateElement) {
                if (!k->value.empty())
                    out.push_back(std::string(text::utf8_prefix(k->value, kMaxArgLiteralBytes)));
            } else {
                string_leaves(k, aliases, out, depth + 1);
            }
        }
        break;
    case NodeKind::Binary:
        if (n->value == "+") {
            string_leaves(n->kids[0], aliases, out, depth + 1);
            string_leaves(n->kids[1], aliases, out, depth + 1);
        }
        break;
    case NodeKind::Identifier:
        // one level through a single-assignment constant
        if (depth == 0) {
            if (auto* init = aliases.constant_init(n->value))
                string_leaves(init, aliases, out, depth + 1);
        }
        break;
    default:
        break;
    }
}

Span make_span(const LineIndex& lines, std::uint32_t offset, std::uint32_t length)
{
    return Span {offset, length, lines.line(offset), lines.column(offset)};
}

bool is_keyword_before_paren(std::string_view w)
{
    static constexpr std::string_view kw[] = {"if", "while", "for", "switch", "catch", "function", "return",
                                              "typeof", "with", "do", "else", "new", "void", "delete",
                                              "in", "of", "await", "yield", "case", "throw"};
    return std::find(std::begin(kw), std::end(kw), w) != std::end(kw);
}

} // namespace

std::vector<CallSite> enumerate_call_sites(const Ast& ast, std::string_view)
{
    AliasTable aliases(ast);
    std::vector<CallSite> out;
    walk(ast.root(), [&](const Node& n) {
        if (n.kind != NodeKind::Call && n.kind != NodeKind::New)
            return true;
        auto written = written_path(n.kids[0]);
        if (!written)
            return true;
        CallSite cs;
        cs.calleePath = *written;
        cs.resolvedPath = strip_global_prefix(aliases.resolve(n.kids[0]).value_or(*written));
        cs.span = n.span;
        cs.isNew = n.kind == NodeKind::New;
        for (std::size_t i = 1; i < n.kids.size(); ++i)
            string_leaves(n.kids[i], aliases, cs.argLiterals);
        out.push_back(std::move(cs));
        return true;
    });
    return out;
}

LiteralClass classify_literal(std::string_view value)
{
    for (std::string_view scheme : {"https://", "http://"}) {
        if (value.size() > scheme.size() && text::iequals(value.substr(0, scheme.size()), scheme)) {
            char first = value[scheme.size()];
            if (first != '/' && first != '?' && first != '#' && !std::isspace(static_cast<unsigned char>(first)))
                return LiteralClass::Url;
        }
    }
    if (value.size() >= 1024) {
        auto good = std::count_if(value.begin(), value.end(), [](char c) { return base64::is_alphabet_char(c); });
        if (static_cast<double>(good) >= 0.95 * static_cast<double>(value.size()))
            return LiteralClass::Base64Candidate;
    }
    return LiteralClass::Plain;
}

std::vector<StringLiteralRecord> extract_string_literals(const Ast& ast, std::string_view text)
{
    LineIndex lines(text);
    std::vector<StringLiteralRecord> out;
    walk(ast.root(), [&](const Node& n) {
        if (n.kind == NodeKind::StringLiteral) {
            StringLiteralRecord r;
            r.value = n.value;
            r.span = make_span(lines, n.span.offset + 1, n.span.length >= 2 ? n.span.length - 2 : 0);
            r.classification = classify_literal(r.value);
            out.push_back(std::move(r));
        } else if (n.kind == NodeKind::TemplateElement) {
            StringLiteralRecord r;
            r.value = n.value;
            r.span = n.span;
            r.classification = classify_literal(r.value);
            out.push_back(std::move(r));
        }
        return true;
    });
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) { return a.span.offset < b.span.offset; });
    return out;
}

std::vector<StringLiteralRecord> extract_string_literals_text(std::string_view text)
{
    LineIndex lines(text);
    std::vector<StringLiteralRecord> out;
    auto emit = [&](std::size_t innerStart, std::size_t innerEnd, std::string value) {
        StringLiteralRecord r;
        r.value = std::move(value);
        r.span = Span {static_cast<std::uint32_t>(innerStart), static_cast<std::uint32_t>(innerEnd - innerStart),
                       lines.line(static_cast<std::uint32_t>(innerStart)),
                       lines.column(static_cast<std::uint32_t>(innerStart))};
        r.classification = classify_literal(r.value);
        out.push_back(std::move(r));
    };

    // Prefer the token stream when the source at least lexes.
    try {
        for (auto& t : tokenize(text)) {
            if (t.type == TokenType::String || t.type == TokenType::TemplateNoSub ||
                t.type == TokenType::TemplateHead || t.type == TokenType::TemplateMiddle ||
                t.type == TokenType::TemplateTail)
                emit(t.innerOffset, t.innerOffset + t.innerLength, t.value);
        }
        return out;
    } catch (const SyntaxError&) {
        out.clear();
    }

    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
            while (i < text.size() && text[i] != '\n')
                ++i;
            continue;
        }
        if (c == '/' && i + 1 < text.size() && text[i + 1] == '*') {
            auto end = text.find("*/", i + 2);
            i = end == std::string_view::npos ? text.size() : end + 2;
            continue;
        }
        if (c != '"' && c != '\'' && c != '`') {
            ++i;
            continue;
        }
        std::size_t j = i + 1;
        bool closed = false;
        while (j < text.size()) {
            if (text[j] == '\\') {
                j += 2;
                continue;
            }
            if (text[j] == c) {
                closed = true;
                break;
            }
            if (c != '`' && text[j] == '\n')
                break;
            ++j;
        }
        j = std::min(j, text.size());
        if (closed)
            emit(i + 1, j, std::string(text.substr(i + 1, j - i - 1)));
        i = j + 1;
    }
    return out;
}

std::vector<Comparison> extract_comparisons(const Ast& ast, std::string_view text)
{
    AliasTable aliases(ast);
    auto operand = [&](const Node* n) {
        auto raw = std::string(text::utf8_prefix(text.substr(n->span.offset, n->span.length), 512));
        auto* u = unparen(n);
        if (u->kind == NodeKind::Identifier) {
            if (auto* init = aliases.constant_init(u->value)) {
                raw += " = ";
                raw += text::utf8_prefix(text.substr(init->span.offset, init->span.length), 512);
            }
        }
        return raw;
    };
    std::vector<Comparison> out;
    walk(ast.root(), [&](const Node& n) {
        if (n.kind == NodeKind::Binary && is_comparison_op(n.value))
            out.push_back(Comparison {n.value, operand(n.kids[0]), operand(n.kids[1]), n.span});
        return true;
    });
    return out;
}

ObfuscationMetrics compute_obfuscation_metrics(std::string_view text)
{
    ObfuscationMetrics m;
    if (text.empty())
        return m;

    auto cps = text::decode_utf8(text);
    std::size_t nonAlnum = 0;
    std::size_t whitespace = 0;
    std::size_t lineLen = 0;
    for (auto& cp : cps) {
        char32_t c = cp.value;
        bool alnum = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
        if (!alnum)
            ++nonAlnum;
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v')
            ++whitespace;
        if (c == '\n') {
            m.maxLineLength = std::max(m.maxLineLength, lineLen);
            lineLen = 0;
        } else if (c != '\r') {
            ++lineLen;
        }
    }
    m.maxLineLength = std::max(m.maxLineLength, lineLen);
    m.nonAlnumRatio = static_cast<double>(nonAlnum) / static_cast<double>(cps.size());
    m.whitespaceFraction = static_cast<double>(whitespace) / static_cast<double>(cps.size());

    std::array<std::size_t, 256> freq {};
    for (unsigned char b : text)
        ++freq[b];
    double h = 0;
    for (auto f : freq) {
        if (!f)
            continue;
        double p = static_cast<double>(f) / static_cast<double>(text.size());
        h -= p * std::log2(p);
    }
    m.shannonEntropyBitsPerChar = std::clamp(h, 0.0, 8.0);

    // identifier-like words: [A-Za-z_$][A-Za-z0-9_$]*, not preceded by a word char or digit
    std::size_t words = 0;
    std::size_t chars = 0;
    std::size_t i = 0;
    auto head = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$'; };
    auto tail = [&](char c) { return head(c) || std::isdigit(static_cast<unsigned char>(c)); };
    while (i < text.size()) {
        if (head(text[i]) && (i == 0 || !tail(text[i - 1]))) {
            std::size_t j = i;
            while (j < text.size() && tail(text[j]))
                ++j;
            if (j - i > 2) {
                ++words;
                chars += j - i;
            }
            i = j;
        } else {
            ++i;
        }
    }
    m.avgIdentifierLength = words ? static_cast<double>(chars) / static_cast<double>(words) : 0.0;
    m.minified = m.maxLineLength > 1000 && m.whitespaceFraction < 0.05;
    return m;
}

std::vector<InvisibleCharHit> detect_invisible_unicode(std::string_view text)
{
    std::vector<InvisibleCharHit> out;
    std::optional<LineIndex> lines;
    auto cps = text::decode_utf8(text);
    for (std::size_t idx = 0; idx < cps.size(); ++idx) {
        char32_t c = cps[idx].value;
        std::optional<InvisibleCategory> cat;
        if (c == 0x200B || c == 0x200C || c == 0x200D || c == 0x2060)
            cat = InvisibleCategory::ZeroWidth;
        else if ((c >= 0x202A && c <= 0x202E) || (c >= 0x2066 && c <= 0x2069))
            cat = InvisibleCategory::BidiControl;
        else if (c == 0xFEFF && idx != 0)
            cat = InvisibleCategory::Bom;
        if (!cat)
            continue;
        if (!lines)
            lines.emplace(text);
        auto off = static_cast<std::uint32_t>(cps[idx].offset);
        InvisibleCharHit hit;
        hit.charIndex = idx;
        hit.codePoint = c;
        hit.category = *cat;
        hit.span = Span {off, static_cast<std::uint32_t>(cps[idx].length), lines->line(off), lines->column(off)};
        out.push_back(hit);
    }
    return out;
}

std::vector<Base64Blob> extract_base64_blobs(std::vector<StringLiteralRecord>& literals)
{
    std::vector<Base64Blob> out;
    for (auto& lit : literals) {
        if (lit.classification != LiteralClass::Base64Candidate)
            continue;
        std::string compact;
        compact.reserve(lit.value.size());
        for (char c : lit.value)
            if (!std::isspace(static_cast<unsigned char>(c)))
                compact.push_back(c);
        auto decoded = base64::decode_strict(compact);
        if (!decoded) {
            lit.classification = LiteralClass::Plain;
            continue;
        }
        Base64Blob b;
        b.span = lit.span;
        b.decodedSizeBytes = decoded->size();
        b.preview = decoded->substr(0, 64);
        b.decodedSha256 = sha256_hex(*decoded);
        out.push_back(std::move(b));
    }
    return out;
}

std::vector<std::string> find_urls(std::string_view s)
{
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        auto pos = std::string_view::npos;
        std::size_t schemeLen = 0;
        for (std::size_t j = i; j + 7 <= s.size(); ++j) {
            if (s[j] != 'h' && s[j] != 'H')
                continue;
            if (text::iequals(s.substr(j, 8), "https://")) {
                pos = j;
                schemeLen = 8;
                break;
            }
            if (text::iequals(s.substr(j, 7), "http://")) {
                pos = j;
                schemeLen = 7;
                break;
            }
        }
        if (pos == std::string_view::npos)
            break;
        std::size_t end = pos + schemeLen;
        while (end < s.size()) {
            auto c = static_cast<unsigned char>(s[end]);
            if (c <= 0x20 || c == '"' || c == '\'' || c == '`' || c == '<' || c == '>' || c == '\\' || c == 0x7F)
                break;
            ++end;
        }
        while (end > pos + schemeLen && std::string_view(".,;)").find(s[end - 1]) != std::string_view::npos)
            --end;
        auto url = s.substr(pos, end - pos);
        if (classify_literal(url) == LiteralClass::Url)
            out.emplace_back(url);
        i = std::max(end, pos + schemeLen);
    }
    return out;
}

namespace {

std::vector<CallSite> call_sites_from_tokens(std::string_view text)
{
    std::vector<CallSite> out;
    std::vector<Token> toks;
    try {
        toks = tokenize(text);
    } catch (const SyntaxError&) {
        return out;
    }
    LineIndex lines(text);
    for (std::size_t i = 0; i < toks.size(); ++i) {
        if (toks[i].type != TokenType::Identifier)
            continue;
        if (i > 0 && toks[i - 1].type == TokenType::Punct && (toks[i - 1].value == "." || toks[i - 1].value == "?."))
            continue;
        std::string path = toks[i].value;
        std::size_t j = i + 1;
        while (j + 1 < toks.size() && toks[j].type == TokenType::Punct && toks[j].value == "." &&
               toks[j + 1].type == TokenType::Identifier) {
            path += "." + toks[j + 1].value;
            j += 2;
        }
        if (j >= toks.size() || toks[j].type != TokenType::Punct || toks[j].value != "(")
            continue;
        if (path.find('.') == std::string::npos && is_keyword_before_paren(path))
            continue;
        CallSite cs;
        cs.calleePath = path;
        cs.resolvedPath = strip_global_prefix(path);
        cs.isNew = i > 0 && toks[i - 1].type == TokenType::Identifier && toks[i - 1].value == "new";
        int depth = 0;
        std::size_t k = j;
        for (; k < toks.size() && toks[k].type != TokenType::End; ++k) {
            auto& t = toks[k];
            if (t.type == TokenType::Punct && (t.value == "(" || t.value == "[" || t.value == "{"))
                ++depth;
            else if (t.type == TokenType::Punct && (t.value == ")" || t.value == "]" || t.value == "}")) {
                if (--depth == 0)
                    break;
            } else if (depth == 1 && (t.type == TokenType::String || t.type == TokenType::TemplateNoSub)) {
                cs.argLiterals.push_back(std::string(text::utf8_prefix(t.value, kMaxArgLiteralBytes)));
            }
        }
        auto endTok = std::min(k, toks.size() - 1);
        auto start = toks[i].offset;
        auto end = toks[endTok].offset + toks[endTok].length;
        cs.span = Span {start, end - start, lines.line(start), lines.column(start)};
        out.push_back(std::move(cs));
    }
    return out;
}

} // namespace

SourceUnit analyze_source(std::string path, std::string text)
{
    SourceUnit u;
    u.path = std::move(path);
    u.text = std::move(text);
    auto parsed = parse_source(u.text);
    if (parsed.ast) {
        u.parseStatus = ParseStatus::Parsed;
        u.callSites = enumerate_call_sites(*parsed.ast, u.text);
        u.strings = extract_string_literals(*parsed.ast, u.text);
        u.comparisons = extract_comparisons(*parsed.ast, u.text);
    } else {
        u.parseStatus = ParseStatus::ParseFailed;
        u.parseError = parsed.error;
        if (u.text.size() <= kMaxParseBytes)
            u.callSites = call_sites_from_tokens(u.text);
        u.strings = extract_string_literals_text(u.text);
    }
    u.metrics = compute_obfuscation_metrics(u.text);
    u.invisible = detect_invisible_unicode(u.text);
    u.blobs = extract_base64_blobs(u.strings);
    u.minified = u.metrics.minified;
    u.hasInvisibleUnicode = !u.invisible.empty();
    return u;
}

CodeModel build_code_model(const ingest::ExtensionArtifact& artifact)
{
    CodeModel model;
    for (auto& f : artifact.files)
        if (f.isCode)
            model.units.push_back(analyze_source(f.path, f.bytes));
    std::sort(model.units.begin(), model.units.end(),
              [](const SourceUnit& a, const SourceUnit& b) { return a.path < b.path; });
    return model;
}

} // namespace extsleuth::code
