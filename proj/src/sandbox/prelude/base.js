// Shared guest environment: recording helpers, time, randomness, eval,
// encoding, URL and the web network surface. Evaluated first in every realm.
const G = globalThis;
const H = G.__host;
delete G.__host;

const mode = H.mode;
const isPage = mode === 'chrome-page';
const isChrome = mode === 'chrome-background' || isPage;
const isNode = mode === 'vscode' || mode === 'npm';
const scenario = JSON.parse(H.scenario());
const manifest = (() => {
    try {
        return JSON.parse(H.manifest());
    } catch (e) {
        return {};
    }
})();
const realEval = G.eval;
const later = (fn) => Promise.resolve().then(fn);
const dispatch = {};

// Declares a registry name for this realm and returns its recorder.
function R(name) {
    H.declare(name);
    return (summary) => H.api(name, summary === undefined ? '' : String(summary));
}

function brief(v) {
    if (typeof v === 'string') return v;
    if (typeof v === 'function') return '[Function]';
    if (typeof v === 'bigint') return v + 'n';
    if (typeof v === 'symbol' || v === undefined) return String(v);
    try {
        const s = JSON.stringify(v, (k, x) => (typeof x === 'function' ? '[Function]' : typeof x === 'bigint' ? x + 'n' : x));
        return s === undefined ? String(v) : s;
    } catch (e) {
        return '[Object]';
    }
}

function summarize(args) {
    return Array.prototype.map.call(args, brief).join(', ');
}

// Wraps an implementation so every call is recorded under `name`.
function wrap(name, impl) {
    const rec = R(name);
    return function (...args) {
        rec(summarize(args));
        return impl.apply(this, args);
    };
}

function settle(cb, value) {
    if (typeof cb === 'function') {
        later(() => cb(value));
        return undefined;
    }
    return Promise.resolve(value);
}

function lastFn(args) {
    return args.length && typeof args[args.length - 1] === 'function' ? args[args.length - 1] : undefined;
}

// ---- unimplemented API fallback

const recUnimpl = R('unimplemented-api');

function stub(path) {
    let self;
    self = new Proxy(function () {}, {
        get(t, p) {
            if (p === Symbol.toPrimitive) return () => '';
            if (typeof p === 'symbol' || p === 'then' || p === 'toJSON') return undefined;
            if (p === 'toString' || p === 'valueOf') return () => '';
            return self;
        },
        apply() {
            return self;
        },
        construct() {
            return self;
        },
        set() {
            return true;
        },
    });
    return self;
}

function fallback(obj, path) {
    return new Proxy(obj, {
        get(t, p, r) {
            if (typeof p === 'symbol' || p in t || p === 'then' || p === 'toJSON') return Reflect.get(t, p, r);
            recUnimpl(path + '.' + p);
            return stub(path + '.' + p);
        },
    });
}

// ---- console

const consoleImpl = {};
for (const level of ['log', 'info', 'warn', 'error', 'debug', 'trace']) {
    consoleImpl[level] = (...args) => H.log(level, args.map(brief).join(' '));
}
consoleImpl.dir = consoleImpl.log;
consoleImpl.table = consoleImpl.log;
consoleImpl.assert = (cond, ...args) => {
    if (!cond) H.log('error', 'Assertion failed: ' + args.map(brief).join(' '));
};
consoleImpl.time = consoleImpl.timeEnd = consoleImpl.timeLog = () => {};
consoleImpl.group = consoleImpl.groupEnd = consoleImpl.groupCollapsed = () => {};
consoleImpl.count = consoleImpl.countReset = () => {};
G.console = consoleImpl;

// ---- virtual time

const RealDate = Date;
function VDate(...a) {
    if (!new.target) return new RealDate(H.now()).toString();
    if (a.length === 0) return Reflect.construct(RealDate, [H.now()], new.target);
    return Reflect.construct(RealDate, a, new.target);
}
VDate.prototype = RealDate.prototype;
VDate.now = function now() {
    return H.now();
};
VDate.UTC = RealDate.UTC;
VDate.parse = RealDate.parse;
Object.defineProperty(RealDate.prototype, 'constructor', { value: VDate, writable: true, configurable: true });
G.Date = VDate;

G.performance = {
    now: () => H.now() - H.start(),
    timeOrigin: H.start(),
    mark() {},
    measure() {},
};

// Deterministic PRNG (mulberry32), fixed seed per realm.
let prngState = 0x2545f491;
function nextRandom() {
    prngState = (prngState + 0x6d2b79f5) | 0;
    let t = prngState;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
}
Math.random = function random() {
    return nextRandom();
};
function randomBytesInto(arr) {
    for (let i = 0; i < arr.length; i++) arr[i] = (nextRandom() * 256) | 0;
    return arr;
}
function randomUUID() {
    const b = randomBytesInto(new Uint8Array(16));
    b[6] = (b[6] & 0x0f) | 0x40;
    b[8] = (b[8] & 0x3f) | 0x80;
    const h = Array.from(b, (x) => x.toString(16).padStart(2, '0')).join('');
    return `${h.slice(0, 8)}-${h.slice(8, 12)}-${h.slice(12, 16)}-${h.slice(16, 20)}-${h.slice(20)}`;
}
G.crypto = {
    getRandomValues: (arr) => {
        const u8 = new Uint8Array(arr.buffer, arr.byteOffset, arr.byteLength);
        randomBytesInto(u8);
        return arr;
    },
    randomUUID,
    subtle: fallback({}, 'crypto.subtle'),
};

// ---- eval

const recEval = R('eval');
const recFunction = R('Function');
G.eval = {
    eval(code) {
        recEval(brief(code));
        return realEval(code);
    },
}.eval;
const RealFunction = Function;
function VFunction(...args) {
    recFunction(args.map(String).join(', '));
    return RealFunction(...args);
}
VFunction.prototype = RealFunction.prototype;
Object.defineProperty(RealFunction.prototype, 'constructor', { value: VFunction, writable: true, configurable: true });
G.Function = VFunction;

// ---- timers

const recSetTimeout = R('setTimeout');
const recSetInterval = R('setInterval');
const recClearTimer = R('clearTimeout');

function callable(fn) {
    if (typeof fn === 'function') return fn;
    const code = String(fn);
    recEval(code);
    return () => realEval(code);
}

function timerHandle(id) {
    if (!isNode) return id;
    return {
        id,
        ref() { return this; },
        unref() { return this; },
        hasRef() { return true; },
        refresh() { return this; },
        [Symbol.toPrimitive]() { return id; },
    };
}

G.setTimeout = function setTimeout(fn, delay, ...args) {
    const f = callable(fn);
    const d = Number(delay) || 0;
    recSetTimeout('delay=' + d);
    return timerHandle(H.setTimer(() => f(...args), d, null, 'setTimeout'));
};
G.setInterval = function setInterval(fn, delay, ...args) {
    const f = callable(fn);
    const d = Number(delay) || 0;
    recSetInterval('interval=' + d);
    return timerHandle(H.setTimer(() => f(...args), d, d, 'setInterval'));
};
G.clearTimeout = G.clearInterval = function clearTimeout(h) {
    if (h == null) return;
    recClearTimer(String(Number(h)));
    H.clearTimer(Number(h));
};
G.queueMicrotask = (fn) => {
    later(fn);
};

// ---- encoding

function utf8Encode(str) {
    str = String(str);
    const out = [];
    for (let i = 0; i < str.length; i++) {
        let c = str.charCodeAt(i);
        if (c >= 0xd800 && c < 0xdc00 && i + 1 < str.length) {
            const d = str.charCodeAt(i + 1);
            if (d >= 0xdc00 && d < 0xe000) {
                c = 0x10000 + ((c - 0xd800) << 10) + (d - 0xdc00);
                i++;
            } else c = 0xfffd;
        } else if (c >= 0xd800 && c < 0xe000) c = 0xfffd;
        if (c < 0x80) out.push(c);
        else if (c < 0x800) out.push(0xc0 | (c >> 6), 0x80 | (c & 63));
        else if (c < 0x10000) out.push(0xe0 | (c >> 12), 0x80 | ((c >> 6) & 63), 0x80 | (c & 63));
        else out.push(0xf0 | (c >> 18), 0x80 | ((c >> 12) & 63), 0x80 | ((c >> 6) & 63), 0x80 | (c & 63));
    }
    return new Uint8Array(out);
}

function utf8Decode(bytes) {
    let s = '';
    for (let i = 0; i < bytes.length; ) {
        const b = bytes[i];
        let cp = 0xfffd;
        let n = 1;
        if (b < 0x80) cp = b;
        else if (b >= 0xc2 && b < 0xe0 && i + 1 < bytes.length && (bytes[i + 1] & 0xc0) === 0x80) {
            cp = ((b & 31) << 6) | (bytes[i + 1] & 63);
            n = 2;
        } else if (b >= 0xe0 && b < 0xf0 && i + 2 < bytes.length && (bytes[i + 1] & 0xc0) === 0x80 && (bytes[i + 2] & 0xc0) === 0x80) {
            cp = ((b & 15) << 12) | ((bytes[i + 1] & 63) << 6) | (bytes[i + 2] & 63);
            n = 3;
        } else if (b >= 0xf0 && b < 0xf5 && i + 3 < bytes.length && (bytes[i + 1] & 0xc0) === 0x80 && (bytes[i + 2] & 0xc0) === 0x80 && (bytes[i + 3] & 0xc0) === 0x80) {
            cp = ((b & 7) << 18) | ((bytes[i + 1] & 63) << 12) | ((bytes[i + 2] & 63) << 6) | (bytes[i + 3] & 63);
            n = 4;
        }
        s += String.fromCodePoint(cp);
        i += n;
    }
    return s;
}

function latin1Encode(str) {
    const out = new Uint8Array(str.length);
    for (let i = 0; i < str.length; i++) out[i] = str.charCodeAt(i) & 0xff;
    return out;
}

function latin1Decode(bytes) {
    let s = '';
    for (let i = 0; i < bytes.length; i++) s += String.fromCharCode(bytes[i]);
    return s;
}

const B64 = 'ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/';
function base64Encode(bytes) {
    let s = '';
    for (let i = 0; i < bytes.length; i += 3) {
        const n = (bytes[i] << 16) | ((bytes[i + 1] || 0) << 8) | (bytes[i + 2] || 0);
        s += B64[(n >> 18) & 63] + B64[(n >> 12) & 63];
        s += i + 1 < bytes.length ? B64[(n >> 6) & 63] : '=';
        s += i + 2 < bytes.length ? B64[n & 63] : '=';
    }
    return s;
}
function base64Decode(str) {
    const clean = String(str).replace(/[^A-Za-z0-9+/\-_]/g, '');
    const out = [];
    let buf = 0;
    let bits = 0;
    for (const ch of clean) {
        const v = ch === '-' ? 62 : ch === '_' ? 63 : B64.indexOf(ch);
        buf = (buf << 6) | v;
        bits += 6;
        if (bits >= 8) {
            bits -= 8;
            out.push((buf >> bits) & 0xff);
        }
    }
    return new Uint8Array(out);
}

G.btoa = (s) => {
    s = String(s);
    if (/[^\x00-\xff]/.test(s)) throw new Error('InvalidCharacterError: btoa input is not Latin1');
    return base64Encode(latin1Encode(s));
};
G.atob = (s) => latin1Decode(base64Decode(s));

class TextEncoderImpl {
    get encoding() {
        return 'utf-8';
    }
    encode(s = '') {
        return utf8Encode(s);
    }
}
class TextDecoderImpl {
    get encoding() {
        return 'utf-8';
    }
    decode(b) {
        if (b === undefined) return '';
        if (b instanceof ArrayBuffer) b = new Uint8Array(b);
        else if (ArrayBuffer.isView(b)) b = new Uint8Array(b.buffer, b.byteOffset, b.byteLength);
        return utf8Decode(b);
    }
}
G.TextEncoder = TextEncoderImpl;
G.TextDecoder = TextDecoderImpl;

// ---- URL

const URL_RE = /^([a-zA-Z][a-zA-Z0-9+.\-]*):(?:\/\/(?:([^:@\/?#]*)(?::([^@\/?#]*))?@)?(\[[^\]]*\]|[^:\/?#]*)(?::(\d*))?)?([^?#]*)(\?[^#]*)?(#.*)?$/;
const DEFAULT_PORTS = { 'http:': '80', 'https:': '443', 'ws:': '80', 'wss:': '443', 'ftp:': '21' };

function removeDots(path) {
    const out = [];
    const segs = path.split('/');
    for (let i = 0; i < segs.length; i++) {
        const s = segs[i];
        if (s === '..') {
            if (out.length > 1) out.pop();
            if (i === segs.length - 1) out.push('');
        } else if (s === '.') {
            if (i === segs.length - 1) out.push('');
        } else out.push(s);
    }
    return out.join('/');
}

class URLSearchParamsImpl {
    constructor(init) {
        this._list = [];
        this._url = null;
        if (init == null) return;
        if (typeof init === 'string') {
            for (const part of init.replace(/^\?/, '').split('&')) {
                if (!part) continue;
                const i = part.indexOf('=');
                const dec = (x) => {
                    try {
                        return decodeURIComponent(x.replace(/\+/g, ' '));
                    } catch (e) {
                        return x;
                    }
                };
                this._list.push(i < 0 ? [dec(part), ''] : [dec(part.slice(0, i)), dec(part.slice(i + 1))]);
            }
        } else if (typeof init[Symbol.iterator] === 'function') {
            for (const [k, v] of init) this._list.push([String(k), String(v)]);
        } else {
            for (const k of Object.keys(init)) this._list.push([k, String(init[k])]);
        }
    }
    _update() {
        if (this._url) this._url._search = this._list.length ? '?' + this.toString() : '';
    }
    append(k, v) {
        this._list.push([String(k), String(v)]);
        this._update();
    }
    delete(k) {
        this._list = this._list.filter((e) => e[0] !== k);
        this._update();
    }
    get(k) {
        const e = this._list.find((x) => x[0] === k);
        return e ? e[1] : null;
    }
    getAll(k) {
        return this._list.filter((x) => x[0] === k).map((x) => x[1]);
    }
    has(k) {
        return this._list.some((x) => x[0] === k);
    }
    set(k, v) {
        const i = this._list.findIndex((x) => x[0] === k);
        if (i < 0) this._list.push([String(k), String(v)]);
        else {
            this._list[i][1] = String(v);
            this._list = this._list.filter((x, j) => j <= i || x[0] !== k);
        }
        this._update();
    }
    sort() {
        this._list.sort((a, b) => (a[0] < b[0] ? -1 : a[0] > b[0] ? 1 : 0));
        this._update();
    }
    forEach(fn, self) {
        for (const [k, v] of this._list) fn.call(self, v, k, this);
    }
    keys() {
        return this._list.map((x) => x[0])[Symbol.iterator]();
    }
    values() {
        return this._list.map((x) => x[1])[Symbol.iterator]();
    }
    entries() {
        return this._list.map((x) => [x[0], x[1]])[Symbol.iterator]();
    }
    [Symbol.iterator]() {
        return this.entries();
    }
    get size() {
        return this._list.length;
    }
    toString() {
        const enc = (x) => encodeURIComponent(x).replace(/%20/g, '+');
        return this._list.map(([k, v]) => enc(k) + '=' + enc(v)).join('&');
    }
}

class URLImpl {
    constructor(input, base) {
        input = String(input).trim();
        let m = URL_RE.exec(input);
        if (!m || (m[4] === undefined && /^(https?|wss?|ftp):$/i.test(m[1] + ':'))) {
            if (base === undefined) throw new TypeError('Invalid URL: ' + input);
            const b = base instanceof URLImpl ? base : new URLImpl(base);
            let abs;
            if (input.startsWith('//')) abs = b.protocol + input;
            else if (input.startsWith('/')) abs = b.protocol + '//' + b.host + input;
            else if (input.startsWith('?')) abs = b.protocol + '//' + b.host + b.pathname + input;
            else if (input.startsWith('#')) abs = b.protocol + '//' + b.host + b.pathname + b.search + input;
            else if (input === '') abs = b.protocol + '//' + b.host + b.pathname + b.search;
            else abs = b.protocol + '//' + b.host + b.pathname.replace(/[^/]*$/, '') + input;
            m = URL_RE.exec(abs);
            if (!m) throw new TypeError('Invalid URL: ' + input);
        }
        this._protocol = m[1].toLowerCase() + ':';
        this._username = m[2] || '';
        this._password = m[3] || '';
        this._hostname = (m[4] || '').toLowerCase();
        this._port = m[5] && m[5] !== DEFAULT_PORTS[this._protocol] ? m[5] : '';
        const special = m[4] !== undefined;
        this._pathname = special ? removeDots(m[6] || '/') || '/' : m[6] || '';
        if (special && !this._pathname.startsWith('/')) this._pathname = '/' + this._pathname;
        this._search = m[7] && m[7] !== '?' ? m[7] : '';
        this._hash = m[8] && m[8] !== '#' ? m[8] : '';
        this._special = special;
        this._params = null;
    }
    get protocol() { return this._protocol; }
    set protocol(v) { this._protocol = String(v).replace(/:?$/, ':'); }
    get username() { return this._username; }
    set username(v) { this._username = String(v); }
    get password() { return this._password; }
    set password(v) { this._password = String(v); }
    get hostname() { return this._hostname; }
    set hostname(v) { this._hostname = String(v).toLowerCase(); }
    get port() { return this._port; }
    set port(v) { this._port = String(v); }
    get host() { return this._hostname + (this._port ? ':' + this._port : ''); }
    set host(v) {
        const [h, p] = String(v).split(':');
        this._hostname = h.toLowerCase();
        this._port = p || '';
    }
    get origin() { return this._special ? this._protocol + '//' + this.host : 'null'; }
    get pathname() { return this._pathname; }
    set pathname(v) { this._pathname = String(v).startsWith('/') ? String(v) : '/' + v; }
    get search() { return this._search; }
    set search(v) {
        v = String(v);
        this._search = v && v !== '?' ? (v.startsWith('?') ? v : '?' + v) : '';
        if (this._params) this._params._list = new URLSearchParamsImpl(this._search)._list;
    }
    get hash() { return this._hash; }
    set hash(v) {
        v = String(v);
        this._hash = v && v !== '#' ? (v.startsWith('#') ? v : '#' + v) : '';
    }
    get searchParams() {
        if (!this._params) {
            this._params = new URLSearchParamsImpl(this._search);
            this._params._url = this;
        }
        return this._params;
    }
    get href() {
        const auth = this._username ? this._username + (this._password ? ':' + this._password : '') + '@' : '';
        const pre = this._special ? this._protocol + '//' + auth + this.host : this._protocol;
        return pre + this._pathname + this._search + this._hash;
    }
    set href(v) {
        Object.assign(this, new URLImpl(v));
    }
    toString() { return this.href; }
    toJSON() { return this.href; }
    static canParse(u, b) {
        try {
            new URLImpl(u, b);
            return true;
        } catch (e) {
            return false;
        }
    }
}
function hostOf(u) {
    try {
        return new URLImpl(u).hostname;
    } catch (e) {
        return '';
    }
}

G.URL = URLImpl;
G.URLSearchParams = URLSearchParamsImpl;

// ---- network

function bodyText(b) {
    if (b == null) return '';
    if (typeof b === 'string') return b;
    if (b instanceof ArrayBuffer) return utf8Decode(new Uint8Array(b));
    if (ArrayBuffer.isView(b)) return utf8Decode(new Uint8Array(b.buffer, b.byteOffset, b.byteLength));
    if (b instanceof URLSearchParamsImpl) return b.toString();
    if (b instanceof FormDataImpl) return b.toString();
    if (b instanceof BlobImpl) return b._text;
    try {
        const s = JSON.stringify(b);
        return s === undefined ? String(b) : s;
    } catch (e) {
        return String(b);
    }
}

function baseUrl() {
    if (isPage) return H.pageUrl;
    if (isChrome) return 'chrome-extension://' + H.extId() + '/';
    return undefined;
}

function absoluteUrl(u) {
    try {
        return new URLImpl(String(u), baseUrl()).href;
    } catch (e) {
        return String(u);
    }
}

class HeadersImpl {
    constructor(init) {
        this._map = new Map();
        if (init) {
            const entries = init instanceof HeadersImpl ? init._map.entries() : typeof init[Symbol.iterator] === 'function' ? init : Object.entries(init);
            for (const [k, v] of entries) this._map.set(String(k).toLowerCase(), String(v));
        }
    }
    get(k) { return this._map.has(String(k).toLowerCase()) ? this._map.get(String(k).toLowerCase()) : null; }
    has(k) { return this._map.has(String(k).toLowerCase()); }
    set(k, v) { this._map.set(String(k).toLowerCase(), String(v)); }
    append(k, v) { this.set(k, this.has(k) ? this.get(k) + ', ' + v : v); }
    delete(k) { this._map.delete(String(k).toLowerCase()); }
    forEach(fn) { this._map.forEach((v, k) => fn(v, k, this)); }
    entries() { return this._map.entries(); }
    keys() { return this._map.keys(); }
    values() { return this._map.values(); }
    [Symbol.iterator]() { return this._map.entries(); }
}

class BlobImpl {
    constructor(parts = [], opts = {}) {
        this._text = parts.map((p) => (p instanceof BlobImpl ? p._text : bodyText(p))).join('');
        this.type = opts.type || '';
    }
    get size() { return utf8Encode(this._text).length; }
    text() { return Promise.resolve(this._text); }
    arrayBuffer() { return Promise.resolve(utf8Encode(this._text).buffer); }
    slice(a, b) { return new BlobImpl([this._text.slice(a, b)]); }
}

class FormDataImpl {
    constructor() { this._list = []; }
    append(k, v) { this._list.push([String(k), v instanceof BlobImpl ? v._text : String(v)]); }
    set(k, v) {
        this.delete(k);
        this.append(k, v);
    }
    get(k) {
        const e = this._list.find((x) => x[0] === k);
        return e ? e[1] : null;
    }
    has(k) { return this._list.some((x) => x[0] === k); }
    delete(k) { this._list = this._list.filter((x) => x[0] !== k); }
    entries() { return this._list[Symbol.iterator](); }
    [Symbol.iterator]() { return this.entries(); }
    toString() { return new URLSearchParamsImpl(this._list).toString(); }
}

class ResponseImpl {
    constructor(body = '', init = {}) {
        this._body = bodyText(body);
        this.status = init.status === undefined ? 200 : init.status;
        this.statusText = init.statusText || '';
        this.headers = new HeadersImpl(init.headers);
        this.url = init.url || '';
        this.redirected = false;
        this.type = 'basic';
        this.bodyUsed = false;
    }
    get ok() { return this.status >= 200 && this.status < 300; }
    text() { return Promise.resolve(this._body); }
    json() { return new Promise((res) => res(JSON.parse(this._body))); }
    arrayBuffer() { return Promise.resolve(utf8Encode(this._body).buffer); }
    blob() { return Promise.resolve(new BlobImpl([this._body])); }
    clone() { return new ResponseImpl(this._body, this); }
}

class RequestImpl {
    constructor(input, init = {}) {
        this.url = absoluteUrl(input instanceof RequestImpl ? input.url : input);
        this.method = String(init.method || (input instanceof RequestImpl ? input.method : 'GET')).toUpperCase();
        this.headers = new HeadersImpl(init.headers);
        this._body = init.body !== undefined ? init.body : input instanceof RequestImpl ? input._body : undefined;
    }
}

const recFetch = R('fetch');
G.fetch = function fetch(input, init = {}) {
    const req = new RequestImpl(input, init);
    recFetch(req.method + ' ' + req.url);
    const r = H.net(req.method, req.url, bodyText(req._body));
    if (r.error !== undefined) return Promise.reject(new TypeError('Failed to fetch'));
    return Promise.resolve(new ResponseImpl(r.body, { status: r.status, url: req.url }));
};
G.Headers = HeadersImpl;
G.Request = RequestImpl;
G.Response = ResponseImpl;
G.Blob = BlobImpl;
G.FormData = FormDataImpl;

class EventTargetImpl {
    constructor() { this._listeners = {}; }
    addEventListener(type, fn) { (this._listeners[type] = this._listeners[type] || []).push(fn); }
    removeEventListener(type, fn) {
        const l = this._listeners[type];
        if (l) this._listeners[type] = l.filter((x) => x !== fn);
    }
    dispatchEvent(ev) {
        const handler = this['on' + ev.type];
        if (typeof handler === 'function') handler.call(this, ev);
        for (const fn of (this._listeners[ev.type] || []).slice()) fn.call(this, ev);
        return true;
    }
}
G.EventTarget = EventTargetImpl;

function dispatchLater(target, type, extra) {
    later(() => target.dispatchEvent(Object.assign({ type, target, currentTarget: target }, extra || {})));
}

if (!isNode) {
    const recXhr = R('XMLHttpRequest.send');
    class XMLHttpRequestImpl extends EventTargetImpl {
        constructor() {
            super();
            this.readyState = 0;
            this.status = 0;
            this.statusText = '';
            this.responseText = '';
            this.response = '';
            this.responseType = '';
            this.timeout = 0;
            this.withCredentials = false;
            this._headers = {};
        }
        open(method, url) {
            this._method = String(method).toUpperCase();
            this._url = absoluteUrl(url);
            this.readyState = 1;
        }
        setRequestHeader(k, v) { this._headers[k] = v; }
        getResponseHeader() { return null; }
        getAllResponseHeaders() { return ''; }
        overrideMimeType() {}
        abort() {}
        send(body) {
            recXhr(this._method + ' ' + this._url);
            const r = H.net(this._method, this._url, bodyText(body));
            if (r.error !== undefined) {
                this.readyState = 4;
                dispatchLater(this, 'readystatechange');
                dispatchLater(this, 'error');
                dispatchLater(this, 'loadend');
                return;
            }
            this.readyState = 4;
            this.status = r.status;
            this.responseText = r.body;
            this.response = this.responseType === 'json' ? (() => { try { return JSON.parse(r.body); } catch (e) { return null; } })() : r.body;
            dispatchLater(this, 'readystatechange');
            dispatchLater(this, 'load');
            dispatchLater(this, 'loadend');
        }
    }
    XMLHttpRequestImpl.UNSENT = 0;
    XMLHttpRequestImpl.OPENED = 1;
    XMLHttpRequestImpl.DONE = 4;
    G.XMLHttpRequest = XMLHttpRequestImpl;

    const recWs = R('WebSocket');
    const recWsSend = R('WebSocket.send');
    class WebSocketImpl extends EventTargetImpl {
        constructor(url) {
            super();
            this.url = absoluteUrl(url);
            recWs(this.url);
            const r = H.net('websocket-connect', this.url, '');
            this._failed = r.error !== undefined;
            this.readyState = this._failed ? 3 : 1;
            this.bufferedAmount = 0;
            if (this._failed) {
                dispatchLater(this, 'error');
                dispatchLater(this, 'close', { code: 1006 });
            } else dispatchLater(this, 'open');
        }
        send(data) {
            recWsSend(this.url);
            H.net('websocket-send', this.url, bodyText(data));
        }
        close() {
            this.readyState = 3;
        }
    }
    WebSocketImpl.CONNECTING = 0;
    WebSocketImpl.OPEN = 1;
    WebSocketImpl.CLOSED = 3;
    G.WebSocket = WebSocketImpl;

    const recBeacon = R('navigator.sendBeacon');
    const recClipRead = R('navigator.clipboard.readText');
    const recClipWrite = R('navigator.clipboard.writeText');
    G.navigator = fallback(
        {
            userAgent: 'Mozilla/5.0 (Windows NT 10.0; Win64; x64) AppleWebKit/537.36 (KHTML, like Gecko) Chrome/120.0.0.0 Safari/537.36',
            language: 'en-US',
            languages: ['en-US', 'en'],
            platform: 'Win32',
            onLine: true,
            cookieEnabled: true,
            hardwareConcurrency: 4,
            sendBeacon(url, data) {
                url = absoluteUrl(url);
                recBeacon(url);
                return H.net('POST', url, bodyText(data)).error === undefined;
            },
            clipboard: {
                readText() {
                    recClipRead('');
                    return Promise.resolve(scenario.clipboardText === null || scenario.clipboardText === undefined ? '' : scenario.clipboardText);
                },
                writeText(t) {
                    recClipWrite(brief(t));
                    return Promise.resolve();
                },
            },
        },
        'navigator'
    );
}
