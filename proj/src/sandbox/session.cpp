#include "extsleuth/sandbox/sandbox.hpp"
#include "extsleuth/common/error.hpp"
#include "extsleuth/common/hash.hpp"
#include "extsleuth/common/text.hpp"
#include "extsleuth/common/url.hpp"
#include "extsleuth/sandbox/hooks.hpp"

#include <json.hpp>
#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <quickjs.h>

#include <algorithm>
#include <cstring>
#include <regex>
#include <set>

namespace extsleuth::sandbox {

extern const std::string_view kPreludeJs;

namespace {

enum class Mode { ChromeBackground, ChromePage, Vscode, Npm };

std::string_view mode_name(Mode m)
{
    switch (m) {
    case Mode::ChromeBackground: return "chrome-background";
    case Mode::ChromePage: return "chrome-page";
    case Mode::Vscode: return "vscode";
    case Mode::Npm: return "npm";
    }
    return "npm";
}

unsigned mode_profiles(Mode m)
{
    switch (m) {
    case Mode::ChromeBackground: return kChromeBackground;
    case Mode::ChromePage: return kChromePage;
    case Mode::Vscode: return kVscode | kNode;
    case Mode::Npm: return kNode;
    }
    return 0;
}

constexpr std::size_t kMaxConsoleLines = 2000;
constexpr int kMaxOriginDepth = 64;

} // namespace

struct Realm {
    SandboxEnv::Impl* env = nullptr;
    int id = 0;
    Mode mode = Mode::Npm;
    JSContext* ctx = nullptr;
    JSValue dispatch = JS_UNDEFINED;
    int tabId = 0;
    std::string pageUrl;
    std::set<std::string> declared;
};

struct SandboxEnv::Impl {
    ingest::ExtensionArtifact artifact;
    ScenarioConfig scenario;
    SandboxOptions options;
    EventLog ownLog;
    EventLog* log = nullptr;
    chrono::Scheduler scheduler;
    VirtualFs vfs;
    NetworkGateway gateway;
    JSRuntime* rt = nullptr;
    std::vector<std::unique_ptr<Realm>> realms;
    struct Timer {
        Realm* realm;
        JSValue fn;
    };
    std::map<std::uint64_t, Timer> timers;
    struct Rejection {
        Realm* realm;
        JSValue promise;
        JSValue reason;
    };
    std::vector<Rejection> rejections;
    std::uint64_t interruptPolls = 0;
    bool budgetExhausted = false;
    std::vector<std::string> console;
    std::string extId;
    std::string manifestText;
    std::string scenarioJson;
    int nextAdHocTab = 0;
    std::optional<std::string> firstError;

    Impl(const ingest::ExtensionArtifact& a, const ScenarioConfig& s, const SandboxOptions& o, EventLog* l);
    ~Impl();

    Realm& main() { return *realms.front(); }
    Realm& new_realm(Mode mode, int tabId = 0, std::string pageUrl = {});

    std::uint64_t record(EventCategory c, std::string action, std::string summary, bool blocked, std::string origin)
    {
        SandboxEvent e;
        e.virtualTimeMs = scheduler.now();
        e.category = c;
        e.action = std::move(action);
        e.blocked = blocked;
        e.origin = std::move(origin);
        e.argsSummary = std::move(summary);
        return log->append(std::move(e));
    }

    NetworkResponse network(const NetworkRequest& req, std::string origin)
    {
        auto d = gateway.handle(req);
        record(EventCategory::Network, req.method, d.argsSummary, d.blocked, std::move(origin));
        return d.response;
    }

    void run_jobs();
    void flush_rejections();
    void settle() { run_jobs(), flush_rejections(); }

    /// Records an exception taken from `r`; returns the detail text, empty
    /// when the exception is not an error (budget interrupt, process.exit).
    std::string note_exception(Realm& r, JSValue exc, std::string_view action, std::string origin = {});
    /// Consumes `v`; true when it was not an exception.
    bool check(Realm& r, JSValue v, bool topLevel, std::string origin = {});
    bool call_dispatch(Realm& r, const char* fn, std::vector<JSValue> args, bool topLevel, JSValue* result = nullptr,
                       std::string origin = {});

    void fire_timer(std::uint64_t id, bool repeating);
    void fire_alarm(Realm* r, const std::string& name);
    std::vector<SandboxEvent> navigate(const std::string& url, int tabId);
    void free_timer(std::uint64_t id);
};

namespace {

Realm* realm_of(JSContext* ctx)
{
    return static_cast<Realm*>(JS_GetContextOpaque(ctx));
}

std::string to_std(JSContext* ctx, JSValueConst v)
{
    std::size_t len = 0;
    const char* s = JS_ToCStringLen(ctx, &len, v);
    if (!s)
        return {};
    std::string out(s, len);
    JS_FreeCString(ctx, s);
    return out;
}

JSValue new_string(JSContext* ctx, std::string_view s)
{
    return JS_NewStringLen(ctx, s.data(), s.size());
}

std::string current_origin(JSContext* ctx)
{
    for (int level = 0; level < kMaxOriginDepth; ++level) {
        JSAtom a = JS_GetScriptOrModuleName(ctx, level);
        if (a == JS_ATOM_NULL)
            continue;
        const char* s = JS_AtomToCString(ctx, a);
        JS_FreeAtom(ctx, a);
        std::string name = s ? s : "";
        if (s)
            JS_FreeCString(ctx, s);
        if (!name.empty() && name[0] != '<')
            return name;
    }
    return {};
}

std::string error_text(JSContext* ctx, JSValueConst exc)
{
    std::string text;
    if (JS_IsError(ctx, exc)) {
        JSValue name = JS_GetPropertyStr(ctx, exc, "name");
        JSValue msg = JS_GetPropertyStr(ctx, exc, "message");
        text = to_std(ctx, name) + ": " + to_std(ctx, msg);
        JS_FreeValue(ctx, name);
        JS_FreeValue(ctx, msg);
        JSValue stack = JS_GetPropertyStr(ctx, exc, "stack");
        if (JS_IsString(stack)) {
            // First frame that points into guest code.
            for (auto& line : text::split(to_std(ctx, stack), '\n')) {
                auto t = std::string(text::trim(line));
                if (t.empty() || t.find("<prelude>") != std::string::npos || t.find("(native)") != std::string::npos)
                    continue;
                text += " " + t;
                break;
            }
        }
        JS_FreeValue(ctx, stack);
    } else {
        text = "uncaught " + to_std(ctx, exc);
    }
    return text;
}

std::string latin1_bytes(std::string_view utf8)
{
    std::string out;
    for (auto cp : text::decode_utf8(utf8))
        out.push_back(static_cast<char>(cp.value & 0xFF));
    return out;
}

std::string digest_hex(const std::string& alg, const std::string& data, const std::optional<std::string>& key)
{
    const EVP_MD* md = EVP_get_digestbyname(alg.c_str());
    if (!md)
        md = EVP_sha256();
    unsigned char out[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (key) {
        HMAC(md, key->data(), static_cast<int>(key->size()), reinterpret_cast<const unsigned char*>(data.data()), data.size(),
             out, &len);
    } else {
        EVP_Digest(data.data(), data.size(), out, &len, md, nullptr);
    }
    return to_hex(out, len);
}

// ---- __host natives

#define HOST_FN(name) JSValue name(JSContext* ctx, JSValueConst, [[maybe_unused]] int argc, [[maybe_unused]] JSValueConst* argv)

JSValue arg(int argc, JSValueConst* argv, int i)
{
    return i < argc ? argv[i] : JS_UNDEFINED;
}

HOST_FN(host_declare)
{
    auto* r = realm_of(ctx);
    auto name = to_std(ctx, arg(argc, argv, 0));
    auto* spec = HostHookRegistry::builtin().find(name);
    if (!spec)
        return JS_ThrowTypeError(ctx, "host hook '%s' is not registered", name.c_str());
    if (!(spec->profiles & mode_profiles(r->mode)))
        return JS_ThrowTypeError(ctx, "host hook '%s' is not enabled for %s", name.c_str(), std::string(mode_name(r->mode)).c_str());
    if (!r->declared.insert(name).second)
        return JS_ThrowTypeError(ctx, "host hook '%s' declared twice", name.c_str());
    return JS_UNDEFINED;
}

HOST_FN(host_api)
{
    auto* r = realm_of(ctx);
    auto name = to_std(ctx, arg(argc, argv, 0));
    if (!r->declared.count(name))
        return JS_ThrowTypeError(ctx, "host hook '%s' used before declaration", name.c_str());
    auto* spec = HostHookRegistry::builtin().find(name);
    if (!spec->record)
        return JS_NewInt32(ctx, -1);
    auto seq = r->env->record(spec->category, spec->action, to_std(ctx, arg(argc, argv, 1)), spec->blocked, current_origin(ctx));
    return JS_NewFloat64(ctx, static_cast<double>(seq));
}

HOST_FN(host_record)
{
    auto* r = realm_of(ctx);
    auto cat = parse_category(to_std(ctx, arg(argc, argv, 0)));
    if (!cat)
        return JS_ThrowTypeError(ctx, "unknown event category");
    auto seq = r->env->record(*cat, to_std(ctx, arg(argc, argv, 1)), to_std(ctx, arg(argc, argv, 2)),
                              JS_ToBool(ctx, arg(argc, argv, 3)) > 0, current_origin(ctx));
    return JS_NewFloat64(ctx, static_cast<double>(seq));
}

HOST_FN(host_now)
{
    return JS_NewFloat64(ctx, static_cast<double>(realm_of(ctx)->env->scheduler.now()));
}

HOST_FN(host_start)
{
    return JS_NewFloat64(ctx, static_cast<double>(realm_of(ctx)->env->scheduler.start()));
}

std::optional<double> optional_number(JSContext* ctx, JSValueConst v)
{
    if (JS_IsNull(v) || JS_IsUndefined(v))
        return std::nullopt;
    double d = 0;
    JS_ToFloat64(ctx, &d, v);
    return d;
}

HOST_FN(host_set_timer)
{
    auto* r = realm_of(ctx);
    auto* env = r->env;
    JSValueConst fn = arg(argc, argv, 0);
    if (!JS_IsFunction(ctx, fn))
        return JS_ThrowTypeError(ctx, "timer callback is not a function");
    double delay = 0;
    JS_ToFloat64(ctx, &delay, arg(argc, argv, 1));
    auto interval = optional_number(ctx, arg(argc, argv, 2));
    auto origin = interval ? chrono::TaskOrigin::SetInterval : chrono::TaskOrigin::SetTimeout;
    auto id = env->scheduler.schedule_timer(
        delay, [env](const chrono::ScheduledTask& t) { env->fire_timer(t.id, t.intervalMs.has_value()); }, interval, origin);
    env->timers[id] = {r, JS_DupValue(ctx, fn)};
    return JS_NewFloat64(ctx, static_cast<double>(id));
}

HOST_FN(host_clear_timer)
{
    auto* env = realm_of(ctx)->env;
    double id = 0;
    JS_ToFloat64(ctx, &id, arg(argc, argv, 0));
    if (!(id >= 1))
        return JS_FALSE;
    auto tid = static_cast<std::uint64_t>(id);
    if (!env->timers.count(tid))
        return JS_FALSE;
    bool removed = env->scheduler.cancel_timer(tid);
    env->free_timer(tid);
    return JS_NewBool(ctx, removed);
}

HOST_FN(host_set_alarm)
{
    auto* r = realm_of(ctx);
    auto* env = r->env;
    auto name = to_std(ctx, arg(argc, argv, 0));
    double delay = 0;
    JS_ToFloat64(ctx, &delay, arg(argc, argv, 1));
    auto period = optional_number(ctx, arg(argc, argv, 2));
    auto id = env->scheduler.register_alarm(name, delay, period,
                                            [env, r, name](const chrono::ScheduledTask&) { env->fire_alarm(r, name); });
    return JS_NewFloat64(ctx, static_cast<double>(id));
}

HOST_FN(host_clear_alarm)
{
    return JS_NewBool(ctx, realm_of(ctx)->env->scheduler.clear_alarm(to_std(ctx, arg(argc, argv, 0))));
}

HOST_FN(host_net)
{
    auto* env = realm_of(ctx)->env;
    NetworkRequest req;
    req.method = to_std(ctx, arg(argc, argv, 0));
    req.url = to_std(ctx, arg(argc, argv, 1));
    req.body = to_std(ctx, arg(argc, argv, 2));
    auto resp = env->network(req, current_origin(ctx));
    JSValue out = JS_NewObject(ctx);
    if (resp.networkError) {
        JS_SetPropertyStr(ctx, out, "error", new_string(ctx, resp.error));
    } else {
        JS_SetPropertyStr(ctx, out, "status", JS_NewInt32(ctx, resp.status));
        JS_SetPropertyStr(ctx, out, "body", new_string(ctx, resp.body));
    }
    return out;
}

HOST_FN(host_fs)
{
    auto& vfs = realm_of(ctx)->env->vfs;
    auto op = to_std(ctx, arg(argc, argv, 0));
    auto path = to_std(ctx, arg(argc, argv, 1));
    if (op == "read") {
        auto s = vfs.read(path);
        return s ? new_string(ctx, *s) : JS_NULL;
    }
    if (op == "write") {
        vfs.write(path, to_std(ctx, arg(argc, argv, 2)), JS_ToBool(ctx, arg(argc, argv, 3)) > 0);
        return JS_UNDEFINED;
    }
    if (op == "exists")
        return JS_NewBool(ctx, vfs.exists(path));
    if (op == "isdir")
        return JS_NewBool(ctx, vfs.is_directory(path));
    if (op == "remove")
        return JS_NewBool(ctx, vfs.remove(path));
    if (op == "mkdir") {
        vfs.mkdir(path);
        return JS_UNDEFINED;
    }
    if (op == "list") {
        auto l = vfs.list(path);
        if (!l)
            return JS_NULL;
        JSValue arr = JS_NewArray(ctx);
        for (std::uint32_t i = 0; i < l->size(); ++i)
            JS_SetPropertyUint32(ctx, arr, i, new_string(ctx, (*l)[i]));
        return arr;
    }
    return JS_ThrowTypeError(ctx, "unknown fs op '%s'", op.c_str());
}

JSValue eval_artifact_file(JSContext* ctx, const std::string& rel, int flags)
{
    auto* env = realm_of(ctx)->env;
    auto src = env->vfs.read(VirtualFs::normalize(rel, VirtualFs::kArtifactRoot));
    if (!src)
        return JS_ThrowReferenceError(ctx, "script '%s' not found in the artifact", rel.c_str());
    return JS_Eval(ctx, src->c_str(), src->size(), rel.c_str(), flags);
}

HOST_FN(host_eval_script)
{
    return eval_artifact_file(ctx, to_std(ctx, arg(argc, argv, 0)), JS_EVAL_TYPE_GLOBAL);
}

HOST_FN(host_eval_module)
{
    return eval_artifact_file(ctx, to_std(ctx, arg(argc, argv, 0)), JS_EVAL_TYPE_MODULE);
}

HOST_FN(host_compile)
{
    auto src = to_std(ctx, arg(argc, argv, 0));
    auto name = to_std(ctx, arg(argc, argv, 1));
    return JS_Eval(ctx, src.c_str(), src.size(), name.c_str(), JS_EVAL_TYPE_GLOBAL);
}

HOST_FN(host_scenario)
{
    return new_string(ctx, realm_of(ctx)->env->scenarioJson);
}

HOST_FN(host_manifest)
{
    return new_string(ctx, realm_of(ctx)->env->manifestText);
}

HOST_FN(host_ext_id)
{
    return new_string(ctx, realm_of(ctx)->env->extId);
}

HOST_FN(host_send_to_background)
{
    auto* r = realm_of(ctx);
    auto* env = r->env;
    auto& bg = env->main();
    nlohmann::ordered_json sender;
    sender["id"] = env->extId;
    sender["url"] = r->pageUrl;
    sender["tab"] = {{"id", r->tabId}, {"index", std::max(0, r->tabId - 1)}, {"windowId", 1}, {"url", r->pageUrl}, {"active", true}};
    sender["frameId"] = 0;
    try {
        auto u = parse_url(r->pageUrl);
        sender["origin"] = u.scheme + "://" + u.host;
    } catch (const Error&) {
    }
    JSContext* bctx = bg.ctx;
    env->call_dispatch(bg, "deliverMessage",
                       {new_string(bctx, to_std(ctx, arg(argc, argv, 0))), new_string(bctx, sender.dump()),
                        JS_NewInt32(bctx, r->id), JS_DupValue(bctx, arg(argc, argv, 1))},
                       false);
    return JS_UNDEFINED;
}

HOST_FN(host_respond)
{
    auto* env = realm_of(ctx)->env;
    int32_t target = 0;
    JS_ToInt32(ctx, &target, arg(argc, argv, 0));
    if (target < 0 || target >= static_cast<int32_t>(env->realms.size()))
        return JS_UNDEFINED;
    auto& dst = *env->realms[target];
    env->call_dispatch(dst, "deliverResponse",
                       {JS_DupValue(dst.ctx, arg(argc, argv, 1)), new_string(dst.ctx, to_std(ctx, arg(argc, argv, 2)))}, false);
    return JS_UNDEFINED;
}

HOST_FN(host_send_to_tab)
{
    auto* r = realm_of(ctx);
    auto* env = r->env;
    int32_t tab = 0;
    JS_ToInt32(ctx, &tab, arg(argc, argv, 0));
    Realm* dst = nullptr;
    for (auto& p : env->realms)
        if (p->mode == Mode::ChromePage && p->tabId == tab)
            dst = p.get();
    if (!dst)
        return JS_FALSE;
    nlohmann::ordered_json sender = {{"id", env->extId}};
    env->call_dispatch(*dst, "deliverMessage",
                       {new_string(dst->ctx, to_std(ctx, arg(argc, argv, 1))), new_string(dst->ctx, sender.dump()),
                        JS_NewInt32(dst->ctx, r->id), JS_DupValue(dst->ctx, arg(argc, argv, 2))},
                       false);
    return JS_TRUE;
}

HOST_FN(host_hash)
{
    auto alg = to_std(ctx, arg(argc, argv, 0));
    auto data = latin1_bytes(to_std(ctx, arg(argc, argv, 1)));
    std::optional<std::string> key;
    if (JS_IsString(arg(argc, argv, 2)))
        key = latin1_bytes(to_std(ctx, arg(argc, argv, 2)));
    return new_string(ctx, digest_hex(alg, data, key));
}

HOST_FN(host_log)
{
    auto* env = realm_of(ctx)->env;
    if (env->console.size() < kMaxConsoleLines)
        env->console.push_back(to_std(ctx, arg(argc, argv, 0)) + ": " + to_std(ctx, arg(argc, argv, 1)));
    return JS_UNDEFINED;
}

#undef HOST_FN

struct HostFn {
    const char* name;
    JSCFunction* fn;
    int length;
};

const HostFn kHostFns[] = {
    {"declare", host_declare, 1},
    {"api", host_api, 2},
    {"record", host_record, 4},
    {"now", host_now, 0},
    {"start", host_start, 0},
    {"setTimer", host_set_timer, 4},
    {"clearTimer", host_clear_timer, 1},
    {"setAlarm", host_set_alarm, 3},
    {"clearAlarm", host_clear_alarm, 1},
    {"net", host_net, 3},
    {"fs", host_fs, 4},
    {"evalScript", host_eval_script, 1},
    {"evalModule", host_eval_module, 1},
    {"compile", host_compile, 2},
    {"scenario", host_scenario, 0},
    {"manifest", host_manifest, 0},
    {"extId", host_ext_id, 0},
    {"sendToBackground", host_send_to_background, 2},
    {"respond", host_respond, 3},
    {"sendToTab", host_send_to_tab, 3},
    {"hash", host_hash, 3},
    {"log", host_log, 2},
};

// ---- runtime callbacks

int interrupt_handler(JSRuntime*, void* opaque)
{
    auto* env = static_cast<SandboxEnv::Impl*>(opaque);
    if (env->budgetExhausted)
        return 1;
    if (++env->interruptPolls > env->options.instructionBudget) {
        env->budgetExhausted = true;
        return 1;
    }
    return 0;
}

void rejection_tracker(JSContext* ctx, JSValueConst promise, JSValueConst reason, JS_BOOL handled, void* opaque)
{
    auto* env = static_cast<SandboxEnv::Impl*>(opaque);
    auto& list = env->rejections;
    if (handled) {
        for (auto it = list.begin(); it != list.end(); ++it) {
            if (JS_VALUE_GET_PTR(it->promise) == JS_VALUE_GET_PTR(promise)) {
                JS_FreeValue(it->realm->ctx, it->promise);
                JS_FreeValue(it->realm->ctx, it->reason);
                list.erase(it);
                break;
            }
        }
        return;
    }
    list.push_back({realm_of(ctx), JS_DupValue(ctx, promise), JS_DupValue(ctx, reason)});
}

bool is_relative(std::string_view s)
{
    return text::starts_with(s, "./") || text::starts_with(s, "../") || text::starts_with(s, "/");
}

std::string parent_of(std::string_view rel)
{
    auto slash = rel.rfind('/');
    return slash == std::string_view::npos ? std::string() : std::string(rel.substr(0, slash));
}

char* module_normalize(JSContext* ctx, const char* base, const char* name, void*)
{
    auto* r = realm_of(ctx);
    std::string req = name;
    std::string out;
    if (is_relative(req) && r->mode != Mode::Npm && r->mode != Mode::Vscode) {
        auto abs = VirtualFs::normalize(req, VirtualFs::normalize(parent_of(base), VirtualFs::kArtifactRoot));
        out = text::starts_with(abs, "/ext/") ? abs.substr(5) : abs;
    } else if (r->mode == Mode::Npm || r->mode == Mode::Vscode) {
        JSValue fn = JS_GetPropertyStr(ctx, r->dispatch, "resolveModule");
        JSValue args[2] = {new_string(ctx, base), new_string(ctx, req)};
        JSValue v = JS_Call(ctx, fn, r->dispatch, 2, args);
        JS_FreeValue(ctx, fn);
        JS_FreeValue(ctx, args[0]);
        JS_FreeValue(ctx, args[1]);
        if (JS_IsException(v))
            return nullptr;
        out = to_std(ctx, v);
        JS_FreeValue(ctx, v);
    } else {
        out = req;
    }
    return js_strdup(ctx, out.c_str());
}

bool is_identifier(const std::string& s)
{
    static const std::regex re("^[A-Za-z_$][A-Za-z0-9_$]*$");
    return std::regex_match(s, re);
}

JSModuleDef* module_loader(JSContext* ctx, const char* name, void*)
{
    auto* r = realm_of(ctx);
    std::string src;
    std::string n = name;
    if (text::starts_with(n, "node:")) {
        auto builtin = n.substr(5);
        JSValue fn = JS_GetPropertyStr(ctx, r->dispatch, "builtinKeys");
        JSValue a = new_string(ctx, builtin);
        JSValue keys = JS_Call(ctx, fn, r->dispatch, 1, &a);
        JS_FreeValue(ctx, fn);
        JS_FreeValue(ctx, a);
        if (JS_IsException(keys))
            return nullptr;
        auto list = nlohmann::json::parse(to_std(ctx, JS_JSONStringify(ctx, keys, JS_UNDEFINED, JS_UNDEFINED)), nullptr, false);
        JS_FreeValue(ctx, keys);
        src = "const m = globalThis[Symbol.for('extsleuth.builtin')](" + nlohmann::json(builtin).dump() + ");\nexport default m;\n";
        int i = 0;
        if (list.is_array()) {
            for (auto& k : list) {
                auto key = k.get<std::string>();
                if (!is_identifier(key))
                    continue;
                src += "const k" + std::to_string(i) + " = m[" + nlohmann::json(key).dump() + "];\nexport { k" +
                       std::to_string(i) + " as " + key + " };\n";
                ++i;
            }
        }
    } else {
        auto s = r->env->vfs.read(VirtualFs::normalize(n, VirtualFs::kArtifactRoot));
        if (!s) {
            JS_ThrowReferenceError(ctx, "could not load module '%s'", name);
            return nullptr;
        }
        src = *s;
    }
    JSValue m = JS_Eval(ctx, src.c_str(), src.size(), name, JS_EVAL_TYPE_MODULE | JS_EVAL_FLAG_COMPILE_ONLY);
    if (JS_IsException(m))
        return nullptr;
    auto* def = static_cast<JSModuleDef*>(JS_VALUE_GET_PTR(m));
    JS_FreeValue(ctx, m);
    return def;
}

std::string manifest_text(const ingest::ExtensionArtifact& a)
{
    auto path = a.kind == ingest::ArtifactKind::ChromeExtension ? std::string("manifest.json") : a.manifest.root + "package.json";
    auto* f = a.find(path);
    return f ? f->bytes : "{}";
}

} // namespace

// ---- Impl

SandboxEnv::Impl::Impl(const ingest::ExtensionArtifact& a, const ScenarioConfig& s, const SandboxOptions& o, EventLog* l)
    : artifact(a)
    , scenario(s)
    , options(o)
    , log(l ? l : &ownLog)
    , scheduler(s.virtualStartDate, s.fast_forward())
    , vfs(a.files)
    , gateway(s.networkPolicy, s.stubResponses,
              s.networkPolicy == NetworkPolicy::Record && o.allowLiveNetwork
                  ? (o.liveFetcher ? o.liveFetcher : LiveFetcher(live_fetch))
                  : LiveFetcher())
{
    extId = extension_id(a);
    manifestText = manifest_text(a);
    scenarioJson = to_json(s).dump();
    nextAdHocTab = static_cast<int>(s.navigations.size()) + 1;
    rt = JS_NewRuntime();
    if (!rt)
        throw Error(ErrorCode::InterpreterInitFailure, "cannot create interpreter runtime");
    JS_SetMemoryLimit(rt, options.memoryLimitBytes);
    JS_SetMaxStackSize(rt, options.maxStackBytes);
    JS_SetInterruptHandler(rt, interrupt_handler, this);
    JS_SetHostPromiseRejectionTracker(rt, rejection_tracker, this);
    JS_SetModuleLoaderFunc(rt, module_normalize, module_loader, this);
    scheduler.set_error_handler([this](const chrono::ScheduledTask&, const std::exception& e) {
        record(EventCategory::Lifecycle, "callback-error", e.what(), false, {});
    });
}

SandboxEnv::Impl::~Impl()
{
    for (auto& [id, t] : timers)
        JS_FreeValue(t.realm->ctx, t.fn);
    timers.clear();
    for (auto& rej : rejections) {
        JS_FreeValue(rej.realm->ctx, rej.promise);
        JS_FreeValue(rej.realm->ctx, rej.reason);
    }
    rejections.clear();
    for (auto& r : realms)
        JS_FreeValue(r->ctx, r->dispatch);
    for (auto& r : realms)
        JS_FreeContext(r->ctx);
    if (rt)
        JS_FreeRuntime(rt);
}

Realm& SandboxEnv::Impl::new_realm(Mode mode, int tabId, std::string pageUrl)
{
    auto r = std::make_unique<Realm>();
    r->env = this;
    r->id = static_cast<int>(realms.size());
    r->mode = mode;
    r->tabId = tabId;
    r->pageUrl = std::move(pageUrl);
    r->ctx = JS_NewContext(rt);
    if (!r->ctx)
        throw Error(ErrorCode::InterpreterInitFailure, "cannot create interpreter context");
    JSContext* ctx = r->ctx;
    JS_SetContextOpaque(ctx, r.get());
    realms.push_back(std::move(r));
    Realm& realm = *realms.back();

    JSValue host = JS_NewObject(ctx);
    for (auto& f : kHostFns)
        JS_SetPropertyStr(ctx, host, f.name, JS_NewCFunction(ctx, f.fn, f.name, f.length));
    JS_SetPropertyStr(ctx, host, "mode", new_string(ctx, mode_name(mode)));
    JS_SetPropertyStr(ctx, host, "root", new_string(ctx, artifact.manifest.root));
    JS_SetPropertyStr(ctx, host, "pageUrl", new_string(ctx, realm.pageUrl));
    JS_SetPropertyStr(ctx, host, "tabId", JS_NewInt32(ctx, tabId));
    JSValue global = JS_GetGlobalObject(ctx);
    JS_SetPropertyStr(ctx, global, "__host", host);
    JS_FreeValue(ctx, global);

    JSValue d = JS_Eval(ctx, kPreludeJs.data(), kPreludeJs.size(), "<prelude>", JS_EVAL_TYPE_GLOBAL);
    if (JS_IsException(d)) {
        JSValue exc = JS_GetException(ctx);
        auto msg = error_text(ctx, exc);
        JS_FreeValue(ctx, exc);
        throw Error(ErrorCode::InterpreterInitFailure, "prelude failed in " + std::string(mode_name(mode)) + " realm: " + msg);
    }
    realm.dispatch = d;
    return realm;
}

void SandboxEnv::Impl::run_jobs()
{
    JSContext* jctx = nullptr;
    while (true) {
        int rc = JS_ExecutePendingJob(rt, &jctx);
        if (rc == 0)
            break;
        if (rc < 0) {
            JSValue exc = JS_GetException(jctx);
            note_exception(*realm_of(jctx), exc, "callback-error");
        }
    }
}

void SandboxEnv::Impl::flush_rejections()
{
    auto list = std::move(rejections);
    rejections.clear();
    for (auto& rej : list) {
        JSContext* ctx = rej.realm->ctx;
        if (!budgetExhausted)
            record(EventCategory::Lifecycle, "unhandled-rejection", error_text(ctx, rej.reason), false, {});
        JS_FreeValue(ctx, rej.promise);
        JS_FreeValue(ctx, rej.reason);
    }
}

std::string SandboxEnv::Impl::note_exception(Realm& r, JSValue exc, std::string_view action, std::string origin)
{
    JSContext* ctx = r.ctx;
    std::string detail;
    bool isExit = false;
    if (budgetExhausted) {
        JS_FreeValue(ctx, exc);
        return {};
    }
    JSValue fn = JS_GetPropertyStr(ctx, r.dispatch, "isExit");
    if (JS_IsFunction(ctx, fn)) {
        JSValue v = JS_Call(ctx, fn, r.dispatch, 1, &exc);
        isExit = JS_ToBool(ctx, v) > 0;
        JS_FreeValue(ctx, v);
    }
    JS_FreeValue(ctx, fn);
    if (!isExit) {
        detail = error_text(ctx, exc);
        record(EventCategory::Lifecycle, std::string(action), detail, false, std::move(origin));
    }
    JS_FreeValue(ctx, exc);
    return detail;
}

bool SandboxEnv::Impl::check(Realm& r, JSValue v, bool topLevel, std::string origin)
{
    if (!JS_IsException(v)) {
        JS_FreeValue(r.ctx, v);
        return true;
    }
    auto detail = note_exception(r, JS_GetException(r.ctx), topLevel ? "runtime-error" : "callback-error", std::move(origin));
    if (topLevel && !detail.empty() && !firstError)
        firstError = detail;
    return false;
}

bool SandboxEnv::Impl::call_dispatch(Realm& r, const char* name, std::vector<JSValue> args, bool topLevel, JSValue* result,
                                     std::string origin)
{
    JSContext* ctx = r.ctx;
    JSValue fn = JS_GetPropertyStr(ctx, r.dispatch, name);
    JSValue v = JS_IsFunction(ctx, fn) ? JS_Call(ctx, fn, r.dispatch, static_cast<int>(args.size()), args.data())
                                       : JS_ThrowTypeError(ctx, "dispatch.%s missing", name);
    JS_FreeValue(ctx, fn);
    for (auto& a : args)
        JS_FreeValue(ctx, a);
    if (result && !JS_IsException(v)) {
        *result = v;
        return true;
    }
    return check(r, v, topLevel, std::move(origin));
}

void SandboxEnv::Impl::free_timer(std::uint64_t id)
{
    auto it = timers.find(id);
    if (it == timers.end())
        return;
    JS_FreeValue(it->second.realm->ctx, it->second.fn);
    timers.erase(it);
}

void SandboxEnv::Impl::fire_timer(std::uint64_t id, bool repeating)
{
    auto it = timers.find(id);
    if (it == timers.end())
        return;
    Realm* r = it->second.realm;
    if (!budgetExhausted) {
        JSValue fn = JS_DupValue(r->ctx, it->second.fn);
        JSValue v = JS_Call(r->ctx, fn, JS_UNDEFINED, 0, nullptr);
        JS_FreeValue(r->ctx, fn);
        check(*r, v, false);
        settle();
    }
    // The scheduler holds the running task outside its table, so it cannot
    // be asked here. Intervals keep their callback until clearInterval.
    if (!repeating)
        free_timer(id);
}

void SandboxEnv::Impl::fire_alarm(Realm* r, const std::string& name)
{
    if (budgetExhausted)
        return;
    call_dispatch(*r, "fireAlarm", {new_string(r->ctx, name)}, false);
    settle();
}

std::vector<SandboxEvent> SandboxEnv::Impl::navigate(const std::string& url, int tabId)
{
    auto before = log->size();
    if (budgetExhausted)
        return {};
    record(EventCategory::Dom, "navigate", url, false, {});
    std::optional<ParsedUrl> parsed;
    try {
        parsed = parse_url(url);
    } catch (const Error&) {
    }
    Realm* page = nullptr;
    for (auto& cs : artifact.manifest.contentScripts) {
        bool hit = false;
        for (auto& pat : cs.matches) {
            try {
                if (parsed && MatchPattern::parse(pat).matches(*parsed))
                    hit = true;
            } catch (const Error&) {
                // malformed patterns are reported by the static engine
            }
        }
        if (!hit)
            continue;
        if (!page)
            page = &new_realm(Mode::ChromePage, tabId, url);
        for (auto& script : cs.scripts) {
            if (budgetExhausted)
                break;
            record(EventCategory::Dom, "content-script-injected", script + " " + url, false, script);
            auto src = vfs.read(VirtualFs::normalize(script, VirtualFs::kArtifactRoot));
            JSValue v = src ? JS_Eval(page->ctx, src->c_str(), src->size(), script.c_str(), JS_EVAL_TYPE_GLOBAL)
                            : JS_ThrowReferenceError(page->ctx, "script '%s' not found in the artifact", script.c_str());
            check(*page, v, false, script);
            settle();
        }
    }
    if (artifact.kind == ingest::ArtifactKind::ChromeExtension && !budgetExhausted) {
        auto& bg = main();
        call_dispatch(bg, "fireTabUpdated", {JS_NewInt32(bg.ctx, tabId), new_string(bg.ctx, url)}, false);
        settle();
    }
    return log->since(before);
}

// ---- SandboxEnv

SandboxEnv::SandboxEnv(std::unique_ptr<Impl> impl)
    : impl_(std::move(impl))
{
}

SandboxEnv::~SandboxEnv() = default;

ingest::ArtifactKind SandboxEnv::kind() const
{
    return impl_->artifact.kind;
}

const ScenarioConfig& SandboxEnv::scenario() const
{
    return impl_->scenario;
}

chrono::Scheduler& SandboxEnv::scheduler()
{
    return impl_->scheduler;
}

VirtualFs& SandboxEnv::vfs()
{
    return impl_->vfs;
}

EventLog& SandboxEnv::log()
{
    return *impl_->log;
}

std::uint64_t SandboxEnv::record_host_event(EventCategory category, std::string action, std::string argsSummary, bool blocked,
                                            std::string origin)
{
    return impl_->record(category, std::move(action), std::move(argsSummary), blocked, std::move(origin));
}

NetworkResponse SandboxEnv::handle_network(const NetworkRequest& req, std::string origin)
{
    return impl_->network(req, std::move(origin));
}

std::vector<SandboxEvent> SandboxEnv::simulate_navigation(const std::string& url)
{
    return impl_->navigate(url, impl_->nextAdHocTab++);
}

std::string SandboxEnv::evaluate(const std::string& code, const std::string& filename)
{
    auto& r = impl_->main();
    JSContext* ctx = r.ctx;
    JSValue v = JS_Eval(ctx, code.c_str(), code.size(), filename.c_str(), JS_EVAL_TYPE_GLOBAL);
    if (JS_IsException(v)) {
        JSValue exc = JS_GetException(ctx);
        auto msg = error_text(ctx, exc);
        JS_FreeValue(ctx, exc);
        impl_->settle();
        throw std::runtime_error(msg);
    }
    JSValue s = JS_JSONStringify(ctx, v, JS_UNDEFINED, JS_UNDEFINED);
    JS_FreeValue(ctx, v);
    std::string out = JS_IsString(s) ? to_std(ctx, s) : "undefined";
    JS_FreeValue(ctx, s);
    impl_->settle();
    return out;
}

std::map<std::string, std::vector<std::string>> SandboxEnv::declared_hooks() const
{
    std::map<std::string, std::vector<std::string>> out;
    for (auto& r : impl_->realms) {
        auto& v = out[std::string(mode_name(r->mode))];
        v.assign(r->declared.begin(), r->declared.end());
    }
    return out;
}

// ---- free functions

std::string_view to_string(RunStatus s)
{
    switch (s) {
    case RunStatus::Completed: return "completed";
    case RunStatus::BudgetExhausted: return "budget-exhausted";
    case RunStatus::RuntimeError: return "runtime-error";
    }
    return "completed";
}

std::optional<RunStatus> parse_run_status(std::string_view s)
{
    for (auto v : {RunStatus::Completed, RunStatus::BudgetExhausted, RunStatus::RuntimeError})
        if (to_string(v) == s)
            return v;
    return std::nullopt;
}

std::string extension_id(const ingest::ExtensionArtifact& artifact)
{
    auto hex = artifact.digest.empty() ? sha256_hex(artifact.manifest.name) : artifact.digest;
    std::string id;
    for (std::size_t i = 0; i < 32 && i < hex.size(); ++i) {
        char c = hex[i];
        int v = c >= 'a' ? c - 'a' + 10 : c - '0';
        id.push_back(static_cast<char>('a' + v));
    }
    return id;
}

std::unique_ptr<SandboxEnv> build_environment(const ingest::ExtensionArtifact& artifact, const ScenarioConfig& scenario,
                                              const SandboxOptions& options, EventLog* log)
{
    validate(scenario);
    auto impl = std::make_unique<SandboxEnv::Impl>(artifact, scenario, options, log);
    Mode mode = Mode::Npm;
    switch (artifact.kind) {
    case ingest::ArtifactKind::ChromeExtension: mode = Mode::ChromeBackground; break;
    case ingest::ArtifactKind::VscodeExtension: mode = Mode::Vscode; break;
    case ingest::ArtifactKind::NpmPackage: mode = Mode::Npm; break;
    }
    impl->new_realm(mode);
    return std::unique_ptr<SandboxEnv>(new SandboxEnv(std::move(impl)));
}

namespace {

struct NodeCommand {
    std::string file;
    std::vector<std::string> args;
};

// "node [flags] <file> [args]" with no shell operators.
std::optional<NodeCommand> node_command(const std::string& cmd)
{
    static const std::regex re(R"(^\s*node(?:\.exe)?\s+((?:--?[\w-]+(?:=\S+)?\s+)*)([^\s;&|<>`$()]+)((?:\s+[^;&|<>`$()]*)?)\s*$)");
    std::smatch m;
    if (!std::regex_match(cmd, m, re))
        return std::nullopt;
    NodeCommand out{m[2].str(), {}};
    if (out.file == "-e" || out.file == "-p")
        return std::nullopt;
    for (auto& a : text::split(m[3].str(), ' '))
        if (!a.empty())
            out.args.push_back(a);
    return out;
}

bool is_module_entry(const ingest::ExtensionArtifact& a, const std::string& path)
{
    if (text::ends_with(path, ".mjs"))
        return true;
    if (text::ends_with(path, ".cjs"))
        return false;
    auto j = nlohmann::json::parse(manifest_text(a), nullptr, false);
    return j.is_object() && j.value("type", "") == "module";
}

} // namespace

RunResult run_dynamic_analysis(SandboxEnv& env)
{
    auto& s = *env.impl_;
    auto& bg = s.main();
    auto& m = s.artifact.manifest;
    auto stop = [&] { return s.budgetExhausted; };

    auto run_file = [&](Realm& r, const std::string& rel, bool module, const char* stage,
                        const std::vector<std::string>& argv = {}) {
        if (module) {
            s.check(r, eval_artifact_file(r.ctx, rel, JS_EVAL_TYPE_MODULE), true, rel);
        } else {
            JSContext* ctx = r.ctx;
            JSValue list = JS_NewArray(ctx);
            for (std::uint32_t i = 0; i < argv.size(); ++i)
                JS_SetPropertyUint32(ctx, list, i, new_string(ctx, argv[i]));
            std::vector<JSValue> args = {new_string(ctx, rel), stage ? new_string(ctx, stage) : JS_UNDEFINED, list};
            JSValue exports = JS_UNDEFINED;
            if (s.call_dispatch(r, "runMain", std::move(args), true, &exports, rel))
                return exports;
        }
        return JS_UNDEFINED;
    };

    switch (s.artifact.kind) {
    case ingest::ArtifactKind::ChromeExtension: {
        for (auto& script : m.backgroundScripts) {
            if (stop())
                break;
            s.record(EventCategory::Lifecycle, "evaluate", script, false, script);
            s.check(bg, eval_artifact_file(bg.ctx, script, m.backgroundIsModule ? JS_EVAL_TYPE_MODULE : JS_EVAL_TYPE_GLOBAL), true,
                    script);
            s.settle();
        }
        if (!stop()) {
            s.call_dispatch(bg, "fireInstalled", {}, false);
            s.settle();
        }
        auto navs = s.scenario.navigations;
        std::stable_sort(navs.begin(), navs.end(), [](auto& a, auto& b) { return a.atVirtualTimeMs < b.atVirtualTimeMs; });
        for (std::size_t i = 0; i < navs.size() && !stop(); ++i) {
            auto due = s.scheduler.start() + navs[i].atVirtualTimeMs;
            if (due > s.scheduler.now())
                s.scheduler.advance_clock(due - s.scheduler.now());
            if (!stop())
                s.navigate(navs[i].url, static_cast<int>(i) + 1);
        }
        break;
    }
    case ingest::ArtifactKind::VscodeExtension: {
        if (m.mainEntry.empty() || !s.artifact.find(m.mainEntry)) {
            s.record(EventCategory::Lifecycle, "no-main-entry", m.mainEntry, false, {});
            break;
        }
        s.record(EventCategory::Lifecycle, "evaluate", m.mainEntry, false, m.mainEntry);
        JSValue exports = run_file(bg, m.mainEntry, false, nullptr);
        s.settle();
        if (!stop() && !JS_IsUndefined(exports)) {
            s.record(EventCategory::Lifecycle, "activate", m.mainEntry, false, m.mainEntry);
            s.call_dispatch(bg, "activate", {JS_DupValue(bg.ctx, exports)}, true, nullptr, m.mainEntry);
            s.settle();
            JSValue err = JS_UNDEFINED;
            if (s.call_dispatch(bg, "takeAsyncError", {}, false, &err)) {
                if (JS_IsString(err)) {
                    auto detail = to_std(bg.ctx, err);
                    s.record(EventCategory::Lifecycle, "runtime-error", detail, false, m.mainEntry);
                    if (!s.firstError)
                        s.firstError = detail;
                }
                JS_FreeValue(bg.ctx, err);
            }
        }
        JS_FreeValue(bg.ctx, exports);
        break;
    }
    case ingest::ArtifactKind::NpmPackage: {
        for (auto& [stage, cmd] : m.lifecycleScripts) {
            if (stop())
                break;
            s.record(EventCategory::Lifecycle, stage, cmd, false, "package.json");
            auto node = node_command(cmd);
            if (!node) {
                s.record(EventCategory::Process, "exec", cmd, true, "package.json");
                continue;
            }
            auto rel = VirtualFs::normalize(node->file, VirtualFs::normalize(m.root, VirtualFs::kArtifactRoot)).substr(5);
            JSValue v = run_file(bg, rel, is_module_entry(s.artifact, rel), stage.c_str(), node->args);
            JS_FreeValue(bg.ctx, v);
            s.settle();
        }
        if (!stop() && !m.mainEntry.empty() && s.artifact.find(m.mainEntry)) {
            s.record(EventCategory::Lifecycle, "import-main", m.mainEntry, false, m.mainEntry);
            JSValue v = run_file(bg, m.mainEntry, is_module_entry(s.artifact, m.mainEntry), nullptr);
            JS_FreeValue(bg.ctx, v);
            s.settle();
        }
        break;
    }
    }

    std::optional<chrono::DrainOutcome> drained;
    if (!stop())
        drained = s.scheduler.drain();

    RunResult res;
    if (s.firstError) {
        res.outcome = {RunStatus::RuntimeError, *s.firstError};
    } else if (s.budgetExhausted) {
        res.outcome = {RunStatus::BudgetExhausted, "instruction budget"};
    } else if (drained == chrono::DrainOutcome::TaskBudget) {
        res.outcome = {RunStatus::BudgetExhausted, "task budget"};
    } else if (drained == chrono::DrainOutcome::Horizon) {
        res.outcome = {RunStatus::BudgetExhausted, "virtual horizon"};
    }
    res.events = s.log->snapshot();
    res.finalVirtualTimeMs = s.scheduler.now();
    res.tasksFired = s.scheduler.fired();
    res.filesWritten = s.vfs.written();
    res.console = s.console;
    return res;
}

RunResult analyze_dynamic(const ingest::ExtensionArtifact& artifact, const ScenarioConfig& scenario, const SandboxOptions& options,
                          EventLog* log)
{
    try {
        auto env = build_environment(artifact, scenario, options, log);
        auto res = run_dynamic_analysis(*env);
        if (log)
            log->close();
        return res;
    } catch (...) {
        if (log)
            log->close();
        throw;
    }
}

} // namespace extsleuth::sandbox
