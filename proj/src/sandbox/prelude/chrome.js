// Chrome extension surface: background (service worker / page) and content
// script realms.

function domainMatch(host, jarHost) {
    const h = jarHost.replace(/^\./, '').toLowerCase();
    host = host.replace(/^\./, '').toLowerCase();
    return host === h || host.endsWith('.' + h);
}

function jarCookies(filter) {
    const out = [];
    const expires = Math.floor(H.start() / 1000) + 30 * 86400;
    for (const host of Object.keys(scenario.cookieJar).sort()) {
        if (!filter(host)) continue;
        for (const c of scenario.cookieJar[host]) {
            out.push({
                name: c.name,
                value: c.value,
                domain: '.' + host,
                hostOnly: false,
                path: '/',
                secure: true,
                httpOnly: false,
                sameSite: 'no_restriction',
                session: false,
                expirationDate: expires,
                storeId: '0',
            });
        }
    }
    return out;
}

function cookieString(host) {
    return jarCookies((h) => domainMatch(host, h))
        .map((c) => c.name + '=' + c.value)
        .join('; ');
}

// An event object; addListener is recorded when `name` is given.
function chromeEvent(name) {
    const rec = name ? R(name + '.addListener') : () => {};
    const listeners = [];
    return {
        addListener(fn) {
            rec(typeof fn);
            listeners.push(fn);
        },
        removeListener(fn) {
            const i = listeners.indexOf(fn);
            if (i >= 0) listeners.splice(i, 1);
        },
        hasListener(fn) {
            return listeners.includes(fn);
        },
        hasListeners() {
            return listeners.length > 0;
        },
        _fire(...args) {
            return listeners.slice().map((fn) => fn(...args));
        },
    };
}

// Callback-or-promise API function recorded under `name`.
function api(name, impl) {
    return wrap(name, function (...args) {
        const cb = lastFn(args);
        if (cb) args = args.slice(0, -1);
        return settle(cb, impl(...args));
    });
}

const copy = (v) => (v === undefined ? undefined : JSON.parse(JSON.stringify(v)));

function storageArea(area, changed) {
    const data = new Map(Object.entries(scenario.dummyStorage));
    const pick = (keys) => {
        const out = {};
        if (keys == null) {
            for (const [k, v] of data) out[k] = copy(v);
        } else if (typeof keys === 'string') {
            if (data.has(keys)) out[keys] = copy(data.get(keys));
        } else if (Array.isArray(keys)) {
            for (const k of keys) if (data.has(k)) out[k] = copy(data.get(k));
        } else {
            for (const k of Object.keys(keys)) out[k] = data.has(k) ? copy(data.get(k)) : keys[k];
        }
        return out;
    };
    const p = 'chrome.storage.' + area;
    return fallback(
        {
            get: api(p + '.get', (keys) => pick(keys)),
            set: api(p + '.set', (items) => {
                const changes = {};
                for (const k of Object.keys(items || {})) {
                    changes[k] = { oldValue: copy(data.get(k)), newValue: copy(items[k]) };
                    data.set(k, copy(items[k]));
                }
                later(() => changed._fire(changes, area));
            }),
            remove: api(p + '.remove', (keys) => {
                for (const k of typeof keys === 'string' ? [keys] : keys || []) data.delete(k);
            }),
            clear: api(p + '.clear', () => {
                data.clear();
            }),
            getBytesInUse: (keys, cb) => settle(typeof keys === 'function' ? keys : cb, JSON.stringify(pick(typeof keys === 'function' ? null : keys)).length),
            QUOTA_BYTES: 10485760,
        },
        p
    );
}

const pendingResponses = new Map();
let nextCallbackId = 1;

function expectResponse(cb) {
    const id = nextCallbackId++;
    if (cb) {
        pendingResponses.set(id, cb);
        return [id, undefined];
    }
    let resolve;
    const promise = new Promise((r) => (resolve = r));
    pendingResponses.set(id, resolve);
    return [id, promise];
}

dispatch.deliverResponse = (cbId, json) => {
    const fn = pendingResponses.get(cbId);
    pendingResponses.delete(cbId);
    if (fn) fn(json === '' ? undefined : JSON.parse(json));
};

function messageArgs(args) {
    const cb = lastFn(args);
    if (cb) args = args.slice(0, -1);
    const msg = args.length >= 2 && typeof args[0] === 'string' ? args[1] : args[0];
    return [msg, cb];
}

const jsonOf = (v) => {
    const s = JSON.stringify(v);
    return s === undefined ? 'null' : s;
};

function buildRuntime() {
    const onMessage = chromeEvent('chrome.runtime.onMessage');
    const onInstalled = chromeEvent('chrome.runtime.onInstalled');
    const onStartup = chromeEvent('chrome.runtime.onStartup');
    const onConnect = chromeEvent('chrome.runtime.onConnect');
    const recSend = R('chrome.runtime.sendMessage');

    dispatch.deliverMessage = (msgJson, senderJson, from, cbId) => {
        const msg = JSON.parse(msgJson);
        const sender = JSON.parse(senderJson);
        let responded = false;
        const sendResponse = (resp) => {
            if (responded) return;
            responded = true;
            H.respond(from, cbId, resp === undefined ? '' : jsonOf(resp));
        };
        let keep = false;
        for (const r of onMessage._fire(msg, sender, sendResponse)) {
            if (r === true) keep = true;
            else if (r && typeof r.then === 'function') {
                keep = true;
                r.then(sendResponse, () => sendResponse(undefined));
            }
        }
        if (!keep) sendResponse(undefined);
    };
    dispatch.fireInstalled = () => onInstalled._fire({ reason: 'install' });

    return fallback(
        {
            id: H.extId(),
            lastError: undefined,
            getManifest: wrap('chrome.runtime.getManifest', () => copy(manifest)),
            getURL: wrap('chrome.runtime.getURL', (p) => 'chrome-extension://' + H.extId() + '/' + String(p).replace(/^\//, '')),
            sendMessage(...args) {
                const [msg, cb] = messageArgs(args);
                recSend(brief(msg));
                const [id, promise] = expectResponse(cb);
                if (isPage) later(() => H.sendToBackground(jsonOf(msg), id));
                else later(() => dispatch.deliverResponse(id, ''));
                return promise;
            },
            connect: wrap('chrome.runtime.connect', () => ({
                name: '',
                postMessage() {},
                disconnect() {},
                onMessage: chromeEvent(null),
                onDisconnect: chromeEvent(null),
            })),
            setUninstallURL: api('chrome.runtime.setUninstallURL', () => undefined),
            getPlatformInfo: api('chrome.runtime.getPlatformInfo', () => ({ os: 'win', arch: 'x86-64', nacl_arch: 'x86-64' })),
            reload: wrap('chrome.runtime.reload', () => undefined),
            onMessage,
            onInstalled,
            onStartup,
            onConnect,
        },
        'chrome.runtime'
    );
}

function buildStorage() {
    const onChanged = chromeEvent('chrome.storage.onChanged');
    return fallback(
        {
            local: storageArea('local', onChanged),
            sync: storageArea('sync', onChanged),
            session: storageArea('session', onChanged),
            onChanged,
        },
        'chrome.storage'
    );
}

function buildI18n() {
    return fallback(
        {
            getMessage: wrap('chrome.i18n.getMessage', () => ''),
            getUILanguage: wrap('chrome.i18n.getUILanguage', () => 'en-US'),
        },
        'chrome.i18n'
    );
}

function syntheticTabs() {
    const navs = scenario.navigations;
    return navs.map((n, i) => ({
        id: i + 1,
        index: i,
        windowId: 1,
        url: n.url,
        title: hostOf(n.url),
        active: i === navs.length - 1,
        highlighted: i === navs.length - 1,
        pinned: false,
        audible: false,
        discarded: false,
        autoDiscardable: true,
        incognito: false,
        status: 'complete',
        groupId: -1,
    }));
}

function cookieFilter(details = {}) {
    const byUrl = details.url ? hostOf(details.url) : null;
    const byDomain = details.domain ? String(details.domain).replace(/^\./, '') : null;
    return (h) => {
        if (byUrl !== null && !domainMatch(byUrl, h)) return false;
        if (byDomain !== null && !domainMatch(byDomain, h) && !domainMatch(h, byDomain)) return false;
        return true;
    };
}

function buildBackgroundChrome() {
    const onUpdated = chromeEvent('chrome.tabs.onUpdated');
    dispatch.fireTabUpdated = (tabId, url) => {
        const tab = Object.assign({}, syntheticTabs().find((t) => t.id === tabId) || { id: tabId, windowId: 1 }, { url, status: 'complete' });
        onUpdated._fire(tabId, { status: 'complete', url }, tab);
    };
    const onAlarm = chromeEvent('chrome.alarms.onAlarm');
    const alarms = new Map();
    dispatch.fireAlarm = (name) => {
        const a = alarms.get(name);
        if (!a) return;
        const fired = Object.assign({}, a);
        if (a.periodInMinutes) a.scheduledTime += a.periodInMinutes * 60000;
        else alarms.delete(name);
        onAlarm._fire(fired);
    };
    const recTabSend = R('chrome.tabs.sendMessage');
    const dynamicRules = [];
    const sessionRules = [];
    const updateRules = (list) => (opts = {}) => {
        const remove = new Set(opts.removeRuleIds || []);
        for (let i = list.length - 1; i >= 0; i--) if (remove.has(list[i].id)) list.splice(i, 1);
        for (const r of opts.addRules || []) list.push(copy(r));
    };
    const event = (n) => chromeEvent(n);
    const ns = (path, members) => fallback(members, path);

    return {
        runtime: buildRuntime(),
        storage: buildStorage(),
        i18n: buildI18n(),
        cookies: ns('chrome.cookies', {
            getAll: api('chrome.cookies.getAll', (details) => jarCookies(cookieFilter(details))),
            get: api('chrome.cookies.get', (details = {}) => jarCookies(cookieFilter({ url: details.url })).find((c) => c.name === details.name) || null),
            set: api('chrome.cookies.set', (details) => copy(details)),
            remove: api('chrome.cookies.remove', (details) => copy(details)),
            getAllCookieStores: api('chrome.cookies.getAllCookieStores', () => [{ id: '0', tabIds: syntheticTabs().map((t) => t.id) }]),
            onChanged: event('chrome.cookies.onChanged'),
        }),
        tabs: ns('chrome.tabs', {
            query: api('chrome.tabs.query', (q = {}) => {
                let tabs = syntheticTabs();
                if (q.active) tabs = tabs.filter((t) => t.active);
                return tabs;
            }),
            get: api('chrome.tabs.get', (id) => syntheticTabs().find((t) => t.id === id)),
            create: api('chrome.tabs.create', (props = {}) => ({ id: syntheticTabs().length + 1, url: props.url || '', windowId: 1, active: true })),
            update: api('chrome.tabs.update', (id, props) => Object.assign({ id }, props)),
            remove: api('chrome.tabs.remove', () => undefined),
            sendMessage(tabId, ...rest) {
                const [msg, cb] = messageArgs(rest);
                recTabSend(tabId + ' ' + brief(msg));
                const [id, promise] = expectResponse(cb);
                later(() => {
                    if (!H.sendToTab(Number(tabId), jsonOf(msg), id)) dispatch.deliverResponse(id, '');
                });
                return promise;
            },
            executeScript: api('chrome.tabs.executeScript', () => []),
            captureVisibleTab: api('chrome.tabs.captureVisibleTab', () => 'data:image/png;base64,'),
            onUpdated,
            onActivated: event('chrome.tabs.onActivated'),
            onCreated: event('chrome.tabs.onCreated'),
            onRemoved: event('chrome.tabs.onRemoved'),
        }),
        alarms: ns('chrome.alarms', {
            create: wrap('chrome.alarms.create', (...args) => {
                const name = typeof args[0] === 'string' ? args[0] : '';
                const info = (typeof args[0] === 'string' ? args[1] : args[0]) || {};
                const now = H.now();
                const delay = info.when !== undefined ? Number(info.when) - now : Number(info.delayInMinutes !== undefined ? info.delayInMinutes : info.periodInMinutes || 0) * 60000;
                const period = info.periodInMinutes ? Number(info.periodInMinutes) * 60000 : null;
                alarms.set(name, { name, scheduledTime: now + Math.max(0, delay), periodInMinutes: info.periodInMinutes });
                H.setAlarm(name, delay, period);
                return settle(lastFn(args), undefined);
            }),
            get: api('chrome.alarms.get', (name = '') => copy(alarms.get(name))),
            getAll: api('chrome.alarms.getAll', () => copy([...alarms.values()])),
            clear: api('chrome.alarms.clear', (name = '') => {
                alarms.delete(name);
                return H.clearAlarm(name);
            }),
            clearAll: api('chrome.alarms.clearAll', () => {
                for (const n of alarms.keys()) H.clearAlarm(n);
                alarms.clear();
                return true;
            }),
            onAlarm,
        }),
        declarativeNetRequest: ns('chrome.declarativeNetRequest', {
            updateDynamicRules: api('chrome.declarativeNetRequest.updateDynamicRules', updateRules(dynamicRules)),
            updateSessionRules: api('chrome.declarativeNetRequest.updateSessionRules', updateRules(sessionRules)),
            getDynamicRules: api('chrome.declarativeNetRequest.getDynamicRules', () => copy(dynamicRules)),
            getSessionRules: api('chrome.declarativeNetRequest.getSessionRules', () => copy(sessionRules)),
            updateEnabledRulesets: api('chrome.declarativeNetRequest.updateEnabledRulesets', () => undefined),
            MAX_NUMBER_OF_DYNAMIC_RULES: 30000,
        }),
        scripting: ns('chrome.scripting', {
            executeScript: api('chrome.scripting.executeScript', () => []),
            registerContentScripts: api('chrome.scripting.registerContentScripts', () => undefined),
            insertCSS: api('chrome.scripting.insertCSS', () => undefined),
        }),
        webRequest: ns('chrome.webRequest', {
            onBeforeRequest: event('chrome.webRequest.onBeforeRequest'),
            onBeforeSendHeaders: event('chrome.webRequest.onBeforeSendHeaders'),
            onHeadersReceived: event('chrome.webRequest.onHeadersReceived'),
            onCompleted: event('chrome.webRequest.onCompleted'),
        }),
        history: ns('chrome.history', {
            search: api('chrome.history.search', () => []),
        }),
        downloads: ns('chrome.downloads', {
            download: api('chrome.downloads.download', () => 1),
        }),
        management: ns('chrome.management', {
            getAll: api('chrome.management.getAll', () => []),
        }),
        identity: ns('chrome.identity', {
            getAuthToken: api('chrome.identity.getAuthToken', () => undefined),
            getProfileUserInfo: api('chrome.identity.getProfileUserInfo', () => ({ email: '', id: '' })),
        }),
        notifications: ns('chrome.notifications', {
            create: api('chrome.notifications.create', (id) => (typeof id === 'string' ? id : 'notification-1')),
        }),
        contextMenus: ns('chrome.contextMenus', {
            create: wrap('chrome.contextMenus.create', (props = {}) => props.id || 1),
            onClicked: event('chrome.contextMenus.onClicked'),
        }),
        action: ns('chrome.action', {
            setBadgeText: api('chrome.action.setBadgeText', () => undefined),
            onClicked: event('chrome.action.onClicked'),
        }),
    };
}

function buildPageChrome() {
    return {
        runtime: buildRuntime(),
        storage: buildStorage(),
        i18n: buildI18n(),
    };
}

// ---- DOM stand-ins

function element(tag) {
    const el = new EventTargetImpl();
    Object.assign(el, {
        tagName: String(tag).toUpperCase(),
        nodeName: String(tag).toUpperCase(),
        style: {},
        dataset: {},
        children: [],
        childNodes: [],
        attributes: {},
        innerHTML: '',
        textContent: '',
        innerText: '',
        value: '',
        id: '',
        className: '',
        classList: { add() {}, remove() {}, contains: () => false, toggle: () => false },
        setAttribute(k, v) { this.attributes[k] = String(v); },
        getAttribute(k) { return k in this.attributes ? this.attributes[k] : null; },
        removeAttribute(k) { delete this.attributes[k]; },
        appendChild(c) { this.children.push(c); return c; },
        removeChild(c) { this.children = this.children.filter((x) => x !== c); return c; },
        insertBefore(c) { this.children.push(c); return c; },
        append(...cs) { this.children.push(...cs); },
        prepend(...cs) { this.children.unshift(...cs); },
        remove() {},
        click() { this.dispatchEvent({ type: 'click', target: this }); },
        focus() {},
        blur() {},
        select() {},
        querySelector: () => null,
        querySelectorAll: () => [],
        getElementsByTagName: () => [],
        getBoundingClientRect: () => ({ x: 0, y: 0, width: 0, height: 0, top: 0, left: 0, right: 0, bottom: 0 }),
    });
    return el;
}

function buildDocument(pageUrl) {
    const doc = new EventTargetImpl();
    const html = element('html');
    const head = element('head');
    const body = element('body');
    const recCookieRead = R('document.cookie.get');
    const recCookieWrite = R('document.cookie.set');
    const recExec = R('document.execCommand');
    const host = pageUrl ? hostOf(pageUrl) : '';
    Object.assign(doc, {
        documentElement: html,
        head,
        body,
        readyState: 'complete',
        title: host,
        domain: host,
        URL: pageUrl || '',
        referrer: '',
        visibilityState: 'visible',
        hidden: false,
        createElement: (t) => element(t),
        createTextNode: (t) => ({ nodeType: 3, textContent: String(t) }),
        getElementById: () => null,
        getElementsByTagName: (t) => (String(t).toLowerCase() === 'body' ? [body] : String(t).toLowerCase() === 'head' ? [head] : []),
        getElementsByClassName: () => [],
        querySelector: (s) => (s === 'body' ? body : s === 'head' ? head : null),
        querySelectorAll: () => [],
        execCommand(cmd) {
            recExec(String(cmd));
            if (String(cmd).toLowerCase() === 'paste') {
                const clip = scenario.clipboardText;
                return clip !== null && clip !== undefined;
            }
            return true;
        },
    });
    Object.defineProperty(doc, 'cookie', {
        get() {
            recCookieRead(host);
            return cookieString(host);
        },
        set(v) {
            recCookieWrite(host + ' ' + String(v));
        },
    });
    return doc;
}

function buildWebStorage(name) {
    const data = new Map();
    const rec = R(name + '.getItem');
    const recSet = R(name + '.setItem');
    return {
        getItem(k) {
            rec(String(k));
            return data.has(String(k)) ? data.get(String(k)) : null;
        },
        setItem(k, v) {
            recSet(String(k));
            data.set(String(k), String(v));
        },
        removeItem(k) { data.delete(String(k)); },
        clear() { data.clear(); },
        key(i) { return [...data.keys()][i] || null; },
        get length() { return data.size; },
    };
}

function buildLocation(u) {
    const url = new URLImpl(u);
    return {
        get href() { return url.href; },
        set href(v) {},
        protocol: url.protocol,
        host: url.host,
        hostname: url.hostname,
        port: url.port,
        pathname: url.pathname,
        search: url.search,
        hash: url.hash,
        origin: url.origin,
        assign() {},
        replace() {},
        reload() {},
        toString() { return url.href; },
    };
}

if (isChrome) {
    const chromeObj = fallback(isPage ? buildPageChrome() : buildBackgroundChrome(), 'chrome');
    G.chrome = chromeObj;
    G.browser = chromeObj;
    G.self = G;
    G.window = G;
    if (isPage) {
        G.location = buildLocation(H.pageUrl);
        G.document = buildDocument(H.pageUrl);
        G.localStorage = buildWebStorage('localStorage');
        G.sessionStorage = buildWebStorage('sessionStorage');
        G.addEventListener = () => {};
        G.removeEventListener = () => {};
        G.postMessage = () => {};
    } else {
        G.location = buildLocation('chrome-extension://' + H.extId() + '/');
        G.document = buildDocument('');
        G.importScripts = (...paths) => {
            for (const p of paths) H.evalScript(String(p).replace(/^\//, ''));
        };
        G.addEventListener = () => {};
        G.registration = { scope: 'chrome-extension://' + H.extId() + '/' };
    }
}
