// Accept/reject agreement between the analyzer's parser and the embedded
// engine's compiler, run in module (strict) mode over a fixed corpus.

#include "extsleuth/code/parser.hpp"

#include <gtest/gtest.h>
#include <quickjs.h>

#include <string>
#include <vector>

namespace {

// Every import resolves to an empty module so only syntax is judged.
JSModuleDef* empty_module(JSContext* ctx, const char* name, void*)
{
    JSValue m = JS_Eval(ctx, "", 0, name, JS_EVAL_TYPE_MODULE | JS_EVAL_FLAG_COMPILE_ONLY);
    if (JS_IsException(m))
        return nullptr;
    auto* def = static_cast<JSModuleDef*>(JS_VALUE_GET_PTR(m));
    JS_FreeValue(ctx, m);
    return def;
}

bool engine_accepts(const std::string& src)
{
    JSRuntime* rt = JS_NewRuntime();
    JS_SetModuleLoaderFunc(rt, nullptr, empty_module, nullptr);
    JSContext* ctx = JS_NewContext(rt);
    JSValue v = JS_Eval(ctx, src.c_str(), src.size(), "<corpus>", JS_EVAL_TYPE_MODULE | JS_EVAL_FLAG_COMPILE_ONLY);
    bool ok = !JS_IsException(v);
    if (!ok)
        JS_FreeValue(ctx, JS_GetException(ctx));
    JS_FreeValue(ctx, v);
    JS_FreeContext(ctx);
    JS_FreeRuntime(rt);
    return ok;
}

const std::vector<std::string> kCorpus = {
    // accepted
    "chrome.cookies.getAll({}, function (c) { return c; });",
    "const a = 1, b = [1, , 2], {c, d: [e = 3], ...f} = g;",
    "let x = a ? b : c ?? d;",
    "x = y => y * 2; z = async (p, q = 1, ...r) => { await p; };",
    "class A extends B { #p = 1; static s; get v() { return this.#p; } set v(n) {} *gen() { yield 1; } async m() {} }",
    "for (const [k, v] of Object.entries(o)) { if (k in o) continue; }",
    "for (let i = 0, n = a.length; i < n; i++) ;",
    "for (var k in obj) delete obj[k];",
    "async function g() { for await (const chunk of stream) use(chunk); }",
    "label: while (true) { break label; }",
    "do x++; while (x < 10)",
    "switch (a) { case 1: b(); break; default: c(); }",
    "try { f(); } catch { g(); } finally { h(); }",
    "try { f(); } catch ({ message }) { log(message); }",
    "const t = tag`hello ${world} and ${`nested ${deep}`}`;",
    "const re = /ab+c/gi.test(s) ? x / 2 / y : /[/]/.source;",
    "a?.b?.[c]?.(d);",
    "import x, { y as z, default as w } from 'mod'; export const q = 1;",
    "import * as ns from \"./n.js\"; export { ns as default2 }; export * from 'o';",
    "export default function () {}",
    "export default class {}",
    "export default a + b;",
    "const big = 123n, hex = 0xFF_FF, oct = 0o17, bin = 0b101, exp = 1.5e-3, dot = .5;",
    "a ||= b; c &&= d; e ?" "?= f; g **= 2;",
    "new Foo; new Foo.Bar(1); new (getClass())(); function F() { return new.target; }",
    "const o = { a, 'b': 1, [c]: 2, d() {}, get e() { return 1; }, set e(v) {}, async *f() {}, ...g };",
    "(function* () { const x = yield; yield* other(); })();",
    "x = function named() { return typeof void 0; };",
    "var s = 'a\\u{1F600}\\x41\\n', u = \"\\u0041\";",
    "if (a) b(); else if (c) d(); else e();",
    "const f = async function () { for await (const x of y) {} };",
    "a = b\n++c",
    "x = a\n(b)",
    "return_ = 1; of = 2; async = 3; get = 4; let_ = 5;",
    "obj.class = obj.new + obj.if;",
    "async function h() { const { default: dflt } = await import('./m.js'); }",
    "console.log(import.meta.url);",
    "`a${b}c${d}e`;",
    "x = (a, b);",
    "({ a: b } = c);",
    "[a, b] = [b, a];",
    "x = -(2 ** 2); y = (-2) ** 2; z = 2 ** -2;",
    "x = a ?? (b || c);",
    "throw new Error('x');",
    "var \\u0061bc = 1;",
    "var caf\xC3\xA9 = 1;",
    "let [a = 1, [b], ...c] = d;",
    "x = { if: 1, class: 2, new: 3 }.if;",
    "async function f() { await using_(); }",
    "x = y\n/re/g.exec(z)",
    "#!/usr/bin/env node\nrun();",
    "class C { static async *[Symbol.iterator]() {} 'quoted'() {} 42() {} }",
    "a = b ? c => d : e => f;",
    "if (x) function_();",
    "",
    "// only a comment",
    "/* block */ ;;",
    // rejected
    "function (",
    "var = 1;",
    "let x = ;",
    "if (a {",
    "a => => b",
    "x = 'unterminated",
    "x = `open ${a",
    "const { a b } = c;",
    "class { }",
    "obj = { get a b() {} };",
    "1 = 2;",
    "a + b = c;",
    "x = -2 ** 2;",
    "a ?? b || c;",
    "throw\nnew Error();",
    "for (x of) {}",
    "a?.b`t`;",
    "var if = 1;",
    "x = { a: 1 b: 2 };",
    "try {}",
    "switch (a) { default: 1; default: 2; }",
    "f(a b);",
    "x = 0x;",
    "x = 1e;",
    "x = 3in y;",
    "x = /unterminated;",
    "var a = [1, 2;",
    "import { a } from;",
    "export { a",
    "x ++ y;",
    "({a = 1});",
    ")",
    "}",
    "@",
};

TEST(ParserOracle, AgreesWithEngineOnCorpus)
{
    int disagreements = 0;
    for (auto& src : kCorpus) {
        bool engine = engine_accepts(src);
        auto ours = extsleuth::code::parse_js(src);
        if (engine != ours.ok) {
            ++disagreements;
            ADD_FAILURE() << "engine=" << engine << " parser=" << ours.ok << " (" << ours.error << ") for: " << src;
        }
    }
    EXPECT_EQ(disagreements, 0);
}

} // namespace
