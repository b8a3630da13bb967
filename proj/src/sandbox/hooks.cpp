#include "extsleuth/sandbox/hooks.hpp"

#include <algorithm>
#include <stdexcept>

namespace extsleuth::sandbox {

namespace {

constexpr unsigned kChrome = kChromeBackground | kChromePage;
constexpr unsigned kAll = kChrome | kVscode | kNode;

using C = EventCategory;

struct Builder {
    std::vector<HookSpec> out;

    HookSpec& add(std::string name, C cat, unsigned profiles)
    {
        HookSpec h;
        h.action = name;
        h.name = std::move(name);
        h.category = cat;
        h.profiles = profiles;
        out.push_back(std::move(h));
        return out.back();
    }
    void quiet(std::string name, C cat, unsigned profiles) { add(std::move(name), cat, profiles).record = false; }
    void seeded(std::string name, C cat, unsigned profiles) { add(std::move(name), cat, profiles).returns = ReturnPolicy::Seeded; }
    void inert(std::string name, C cat, unsigned profiles) { add(std::move(name), cat, profiles).returns = ReturnPolicy::Inert; }
    void process(std::string name, std::string action, unsigned profiles)
    {
        auto& h = add(std::move(name), C::Process, profiles);
        h.action = std::move(action);
        h.blocked = true;
        h.returns = ReturnPolicy::Inert;
    }
};

std::vector<HookSpec> build()
{
    Builder b;
    const auto api = C::ExtensionApi;

    // every realm
    b.add(std::string(kUnimplementedApi), api, kAll);
    b.add("eval", C::Eval, kAll);
    b.add("Function", C::Eval, kAll);
    b.add("setTimeout", C::Timer, kAll);
    b.add("setInterval", C::Timer, kAll);
    b.quiet("clearTimeout", C::Timer, kAll);
    // network calls surface as gateway events, not hook events
    b.quiet("fetch", C::Network, kAll);

    // web platform in chrome realms
    b.quiet("XMLHttpRequest.send", C::Network, kChrome);
    b.quiet("WebSocket", C::Network, kChrome);
    b.quiet("WebSocket.send", C::Network, kChrome);
    b.quiet("navigator.sendBeacon", C::Network, kChrome);
    b.seeded("navigator.clipboard.readText", C::Clipboard, kChrome);
    b.add("navigator.clipboard.writeText", C::Clipboard, kChrome);
    b.seeded("document.cookie.get", C::Dom, kChrome);
    b.add("document.cookie.set", C::Dom, kChrome);
    b.add("document.execCommand", C::Dom, kChrome);
    for (auto area : {"localStorage", "sessionStorage"}) {
        b.add(std::string(area) + ".getItem", C::Dom, kChromePage);
        b.add(std::string(area) + ".setItem", C::Dom, kChromePage);
    }

    // chrome.* shared by background and content scripts
    for (auto ev : {"onMessage", "onInstalled", "onStartup", "onConnect"})
        b.add(std::string("chrome.runtime.") + ev + ".addListener", api, kChrome);
    b.add("chrome.runtime.sendMessage", api, kChrome);
    b.quiet("chrome.runtime.getManifest", api, kChrome);
    b.quiet("chrome.runtime.getURL", api, kChrome);
    b.add("chrome.runtime.connect", api, kChrome);
    b.add("chrome.runtime.setUninstallURL", api, kChrome);
    b.add("chrome.runtime.getPlatformInfo", api, kChrome);
    b.add("chrome.runtime.reload", api, kChrome);
    b.add("chrome.storage.onChanged.addListener", api, kChrome);
    for (auto area : {"local", "sync", "session"}) {
        auto p = std::string("chrome.storage.") + area;
        b.seeded(p + ".get", api, kChrome);
        b.add(p + ".set", api, kChrome);
        b.add(p + ".remove", api, kChrome);
        b.add(p + ".clear", api, kChrome);
    }
    b.quiet("chrome.i18n.getMessage", api, kChrome);
    b.quiet("chrome.i18n.getUILanguage", api, kChrome);

    // chrome.* background only
    const auto bg = kChromeBackground;
    b.seeded("chrome.cookies.getAll", api, bg);
    b.seeded("chrome.cookies.get", api, bg);
    b.inert("chrome.cookies.set", api, bg);
    b.inert("chrome.cookies.remove", api, bg);
    b.add("chrome.cookies.getAllCookieStores", api, bg);
    b.add("chrome.cookies.onChanged.addListener", api, bg);
    b.seeded("chrome.tabs.query", api, bg);
    b.seeded("chrome.tabs.get", api, bg);
    b.inert("chrome.tabs.create", api, bg);
    b.inert("chrome.tabs.update", api, bg);
    b.inert("chrome.tabs.remove", api, bg);
    b.add("chrome.tabs.sendMessage", api, bg);
    b.inert("chrome.tabs.executeScript", api, bg);
    b.inert("chrome.tabs.captureVisibleTab", api, bg);
    for (auto ev : {"onUpdated", "onActivated", "onCreated", "onRemoved"})
        b.add(std::string("chrome.tabs.") + ev + ".addListener", api, bg);
    for (auto fn : {"create", "get", "getAll", "clear", "clearAll"})
        b.add(std::string("chrome.alarms.") + fn, api, bg);
    b.add("chrome.alarms.onAlarm.addListener", api, bg);
    for (auto fn : {"updateDynamicRules", "updateSessionRules", "getDynamicRules", "getSessionRules", "updateEnabledRulesets"})
        b.add(std::string("chrome.declarativeNetRequest.") + fn, api, bg);
    for (auto fn : {"executeScript", "registerContentScripts", "insertCSS"})
        b.inert(std::string("chrome.scripting.") + fn, api, bg);
    for (auto ev : {"onBeforeRequest", "onBeforeSendHeaders", "onHeadersReceived", "onCompleted"})
        b.add(std::string("chrome.webRequest.") + ev + ".addListener", api, bg);
    b.inert("chrome.history.search", api, bg);
    b.inert("chrome.downloads.download", api, bg);
    b.inert("chrome.management.getAll", api, bg);
    b.inert("chrome.identity.getAuthToken", api, bg);
    b.inert("chrome.identity.getProfileUserInfo", api, bg);
    b.inert("chrome.notifications.create", api, bg);
    b.inert("chrome.contextMenus.create", api, bg);
    b.add("chrome.contextMenus.onClicked.addListener", api, bg);
    b.inert("chrome.action.setBadgeText", api, bg);
    b.add("chrome.action.onClicked.addListener", api, bg);

    // Node builtins
    b.add("process.exit", C::Lifecycle, kNode);
    b.process("process.kill", "kill", kNode);
    for (auto op : {"readFile", "writeFile", "appendFile", "unlink", "rm", "mkdir", "readdir", "copyFile", "rename", "chmod"}) {
        b.add(std::string("fs.") + op + "Sync", C::Filesystem, kNode);
        b.add(std::string("fs.") + op, C::Filesystem, kNode);
        b.add(std::string("fs.promises.") + op, C::Filesystem, kNode);
    }
    b.add("fs.createWriteStream", C::Filesystem, kNode);
    for (auto fn : {"exec", "execSync", "execFile", "execFileSync", "spawn", "spawnSync", "fork"})
        b.process(std::string("child_process.") + fn, fn, kNode);
    b.quiet("http.request", C::Network, kNode);
    b.quiet("https.request", C::Network, kNode);
    b.quiet("net.connect", C::Network, kNode);
    b.quiet("dns.lookup", C::Network, kNode);
    b.add("vm.runInThisContext", C::Eval, kNode);

    // vscode module
    const auto vs = kVscode;
    b.add("workbench.extensions.installExtension", api, vs);
    b.add("vscode.WorkspaceConfiguration.update", api, vs);
    b.process("vscode.Terminal.sendText", "terminal-sendText", vs);
    for (auto fn : {"showInformationMessage", "showWarningMessage", "showErrorMessage", "showInputBox", "showQuickPick"})
        b.inert(std::string("vscode.window.") + fn, api, vs);
    b.quiet("vscode.window.createOutputChannel", api, vs);
    b.quiet("vscode.window.createStatusBarItem", api, vs);
    b.inert("vscode.window.createTerminal", api, vs);
    b.inert("vscode.window.createWebviewPanel", api, vs);
    b.inert("vscode.window.registerTreeDataProvider", api, vs);
    b.inert("vscode.window.registerWebviewViewProvider", api, vs);
    b.seeded("vscode.workspace.getConfiguration", api, vs);
    b.inert("vscode.workspace.findFiles", api, vs);
    b.inert("vscode.workspace.openTextDocument", api, vs);
    b.add("vscode.workspace.fs.readFile", C::Filesystem, vs);
    b.add("vscode.workspace.fs.writeFile", C::Filesystem, vs);
    b.add("vscode.commands.registerCommand", api, vs);
    b.inert("vscode.commands.registerTextEditorCommand", api, vs);
    b.add("vscode.commands.executeCommand", api, vs);
    b.add("vscode.commands.getCommands", api, vs);
    b.seeded("vscode.env.clipboard.readText", C::Clipboard, vs);
    b.add("vscode.env.clipboard.writeText", C::Clipboard, vs);
    b.inert("vscode.env.openExternal", api, vs);
    b.inert("vscode.extensions.getExtension", api, vs);
    for (auto fn : {"registerCompletionItemProvider", "registerHoverProvider", "registerCodeActionsProvider", "registerDefinitionProvider"})
        b.inert(std::string("vscode.languages.") + fn, api, vs);

    return std::move(b.out);
}

} // namespace

HostHookRegistry::HostHookRegistry(std::vector<HookSpec> entries)
    : entries_(std::move(entries))
{
    std::sort(entries_.begin(), entries_.end(), [](auto& a, auto& b) { return a.name < b.name; });
    for (std::size_t i = 1; i < entries_.size(); ++i)
        if (entries_[i].name == entries_[i - 1].name)
            throw std::logic_error("duplicate host hook " + entries_[i].name);
}

const HostHookRegistry& HostHookRegistry::builtin()
{
    static const HostHookRegistry reg(build());
    return reg;
}

const HookSpec* HostHookRegistry::find(std::string_view name) const
{
    auto it = std::lower_bound(entries_.begin(), entries_.end(), name,
                               [](const HookSpec& h, std::string_view n) { return h.name < n; });
    return it != entries_.end() && it->name == name ? &*it : nullptr;
}

} // namespace extsleuth::sandbox
