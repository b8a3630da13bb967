// Node builtins and the CommonJS loader for the vscode and npm realms.

function pathNormalize(p) {
    p = String(p).replace(/\\/g, '/');
    const abs = p.startsWith('/');
    const out = [];
    for (const s of p.split('/')) {
        if (!s || s === '.') continue;
        if (s === '..') {
            if (out.length && out[out.length - 1] !== '..') out.pop();
            else if (!abs) out.push('..');
        } else out.push(s);
    }
    const r = (abs ? '/' : '') + out.join('/');
    return r || (abs ? '/' : '.');
}

const pathMod = {
    sep: '/',
    delimiter: ':',
    normalize: pathNormalize,
    join: (...parts) => pathNormalize(parts.filter((x) => x !== '').join('/') || '.'),
    resolve: (...parts) => {
        let r = '';
        for (let i = parts.length - 1; i >= 0 && !r.startsWith('/'); i--) r = String(parts[i]).replace(/\\/g, '/') + (r ? '/' + r : '');
        if (!r.startsWith('/')) r = processCwd + '/' + r;
        return pathNormalize(r);
    },
    dirname: (p) => {
        p = String(p).replace(/\\/g, '/').replace(/\/+$/, '');
        const i = p.lastIndexOf('/');
        return i < 0 ? '.' : i === 0 ? '/' : p.slice(0, i);
    },
    basename: (p, ext) => {
        let b = String(p).replace(/\\/g, '/').replace(/\/+$/, '');
        b = b.slice(b.lastIndexOf('/') + 1);
        return ext && b.endsWith(ext) && b !== ext ? b.slice(0, -ext.length) : b;
    },
    extname: (p) => {
        const b = pathMod.basename(p);
        const i = b.lastIndexOf('.');
        return i <= 0 ? '' : b.slice(i);
    },
    isAbsolute: (p) => String(p).startsWith('/') || /^[A-Za-z]:[\\/]/.test(String(p)),
    relative: (from, to) => {
        const a = pathMod.resolve(from).split('/').filter(Boolean);
        const b = pathMod.resolve(to).split('/').filter(Boolean);
        let i = 0;
        while (i < a.length && i < b.length && a[i] === b[i]) i++;
        return [...a.slice(i).map(() => '..'), ...b.slice(i)].join('/');
    },
    parse: (p) => {
        const base = pathMod.basename(p);
        const ext = pathMod.extname(p);
        const dir = pathMod.dirname(p);
        return { root: String(p).startsWith('/') ? '/' : '', dir, base, ext, name: ext ? base.slice(0, -ext.length) : base };
    },
    format: (o) => (o.dir ? o.dir + '/' : '') + (o.base || (o.name || '') + (o.ext || '')),
    toNamespacedPath: (p) => p,
};
pathMod.posix = pathMod;
pathMod.win32 = pathMod;

// ---- events

class EventEmitter {
    constructor() {
        this._events = {};
    }
    on(type, fn) {
        if (!this._events) this._events = {};
        (this._events[type] = this._events[type] || []).push(fn);
        return this;
    }
    prependListener(type, fn) {
        if (!this._events) this._events = {};
        (this._events[type] = this._events[type] || []).unshift(fn);
        return this;
    }
    once(type, fn) {
        const w = (...a) => {
            this.off(type, w);
            fn.apply(this, a);
        };
        w.listener = fn;
        return this.on(type, w);
    }
    off(type, fn) {
        const l = this._events && this._events[type];
        if (l) this._events[type] = l.filter((x) => x !== fn && x.listener !== fn);
        return this;
    }
    removeAllListeners(type) {
        if (type === undefined) this._events = {};
        else if (this._events) delete this._events[type];
        return this;
    }
    emit(type, ...args) {
        const l = this._events && this._events[type];
        if (!l || !l.length) return false;
        for (const fn of l.slice()) fn.apply(this, args);
        return true;
    }
    listeners(type) {
        return ((this._events && this._events[type]) || []).slice();
    }
    listenerCount(type) {
        return this.listeners(type).length;
    }
    eventNames() {
        return Object.keys(this._events || {});
    }
    setMaxListeners() {
        return this;
    }
    getMaxListeners() {
        return 10;
    }
}
EventEmitter.prototype.addListener = EventEmitter.prototype.on;
EventEmitter.prototype.removeListener = EventEmitter.prototype.off;
EventEmitter.EventEmitter = EventEmitter;
EventEmitter.defaultMaxListeners = 10;
EventEmitter.once = (em, type) => new Promise((res) => em.once(type, (...a) => res(a)));

// ---- Buffer

class Buffer extends Uint8Array {
    static from(v, enc, len) {
        if (typeof v === 'string') return Buffer._wrap(encodeString(v, enc));
        if (v instanceof ArrayBuffer) return new Buffer(v, enc || 0, len === undefined ? v.byteLength - (enc || 0) : len);
        if (ArrayBuffer.isView(v)) return Buffer._wrap(new Uint8Array(v.buffer, v.byteOffset, v.byteLength).slice());
        if (v && v.type === 'Buffer' && Array.isArray(v.data)) return Buffer._wrap(Uint8Array.from(v.data));
        if (v && typeof v.length === 'number') return Buffer._wrap(Uint8Array.from(v));
        return Buffer._wrap(encodeString(String(v), enc));
    }
    static _wrap(u8) {
        return new Buffer(u8.buffer, u8.byteOffset, u8.byteLength);
    }
    static alloc(n, fill) {
        const b = new Buffer(n);
        if (fill !== undefined) b.fill(typeof fill === 'string' ? fill.charCodeAt(0) : fill);
        return b;
    }
    static allocUnsafe(n) {
        return new Buffer(n);
    }
    static isBuffer(b) {
        return b instanceof Buffer;
    }
    static isEncoding(e) {
        return ['utf8', 'utf-8', 'hex', 'base64', 'base64url', 'latin1', 'binary', 'ascii', 'ucs2', 'utf16le'].includes(String(e).toLowerCase());
    }
    static byteLength(v, enc) {
        return typeof v === 'string' ? encodeString(v, enc).length : v.byteLength;
    }
    static concat(list, total) {
        const n = total === undefined ? list.reduce((a, b) => a + b.length, 0) : total;
        const out = Buffer.alloc(n);
        let off = 0;
        for (const b of list) {
            out.set(b.subarray(0, Math.max(0, n - off)), off);
            off += b.length;
            if (off >= n) break;
        }
        return out;
    }
    toString(enc, start = 0, end = this.length) {
        return decodeBytes(this.subarray(start, end), enc);
    }
    toJSON() {
        return { type: 'Buffer', data: Array.from(this) };
    }
    equals(o) {
        return this.length === o.length && this.every((x, i) => x === o[i]);
    }
    write(str, offset = 0, len, enc) {
        const b = encodeString(str, typeof len === 'string' ? len : enc);
        const n = Math.min(b.length, this.length - offset);
        this.set(b.subarray(0, n), offset);
        return n;
    }
    readUInt8(o = 0) {
        return this[o];
    }
    readUInt32LE(o = 0) {
        return (this[o] | (this[o + 1] << 8) | (this[o + 2] << 16)) + this[o + 3] * 0x1000000;
    }
    readUInt32BE(o = 0) {
        return this[o] * 0x1000000 + ((this[o + 1] << 16) | (this[o + 2] << 8) | this[o + 3]);
    }
    copy(target, ts = 0, ss = 0, se = this.length) {
        const part = this.subarray(ss, se);
        target.set(part.subarray(0, Math.max(0, target.length - ts)), ts);
        return Math.min(part.length, target.length - ts);
    }
}

function encodeString(s, enc) {
    switch (String(enc || 'utf8').toLowerCase()) {
        case 'hex': {
            const out = new Uint8Array(Math.floor(s.length / 2));
            for (let i = 0; i < out.length; i++) out[i] = parseInt(s.substr(i * 2, 2), 16) || 0;
            return out;
        }
        case 'base64':
        case 'base64url':
            return base64Decode(s);
        case 'latin1':
        case 'binary':
        case 'ascii':
            return latin1Encode(s);
        case 'ucs2':
        case 'utf16le': {
            const out = new Uint8Array(s.length * 2);
            for (let i = 0; i < s.length; i++) {
                out[i * 2] = s.charCodeAt(i) & 0xff;
                out[i * 2 + 1] = s.charCodeAt(i) >> 8;
            }
            return out;
        }
        default:
            return utf8Encode(s);
    }
}

function decodeBytes(b, enc) {
    switch (String(enc || 'utf8').toLowerCase()) {
        case 'hex':
            return Array.from(b, (x) => x.toString(16).padStart(2, '0')).join('');
        case 'base64':
            return base64Encode(b);
        case 'base64url':
            return base64Encode(b).replace(/\+/g, '-').replace(/\//g, '_').replace(/=+$/, '');
        case 'latin1':
        case 'binary':
            return latin1Decode(b);
        case 'ascii':
            return latin1Decode(b.map((x) => x & 0x7f));
        case 'ucs2':
        case 'utf16le': {
            let s = '';
            for (let i = 0; i + 1 < b.length; i += 2) s += String.fromCharCode(b[i] | (b[i + 1] << 8));
            return s;
        }
        default:
            return utf8Decode(b);
    }
}

// ---- process

let processCwd = pathNormalize('/ext/' + H.root);
const HOME = 'C:\\Users\\analyst';
const processEnv = {
    ALLUSERSPROFILE: 'C:\\ProgramData',
    APPDATA: HOME + '\\AppData\\Roaming',
    COMPUTERNAME: 'DESKTOP-SANDBOX',
    HOMEDRIVE: 'C:',
    HOMEPATH: '\\Users\\analyst',
    LOCALAPPDATA: HOME + '\\AppData\\Local',
    NODE_ENV: 'production',
    NUMBER_OF_PROCESSORS: '4',
    OS: 'Windows_NT',
    PATH: 'C:\\Windows\\system32;C:\\Windows;C:\\Program Files\\nodejs\\',
    PATHEXT: '.COM;.EXE;.BAT;.CMD;.VBS;.JS',
    PROCESSOR_ARCHITECTURE: 'AMD64',
    ProgramFiles: 'C:\\Program Files',
    SystemRoot: 'C:\\Windows',
    TEMP: HOME + '\\AppData\\Local\\Temp',
    TMP: HOME + '\\AppData\\Local\\Temp',
    USERDOMAIN: 'DESKTOP-SANDBOX',
    USERNAME: 'analyst',
    USERPROFILE: HOME,
    windir: 'C:\\Windows',
};
if (mode === 'npm') {
    processEnv.npm_package_name = String(manifest.name || '');
    processEnv.npm_package_version = String(manifest.version || '');
    processEnv.npm_config_user_agent = 'npm/9.8.1 node/v18.19.0 win32 x64 workspaces/false';
    processEnv.INIT_CWD = 'C:\\Users\\analyst\\project';
}

const recExit = R('process.exit');
const recKill = R('process.kill');
const EXIT = Symbol.for('extsleuth.exit');

const processObj = new EventEmitter();
Object.assign(processObj, {
    env: processEnv,
    argv: ['C:\\Program Files\\nodejs\\node.exe'],
    argv0: 'node',
    execArgv: [],
    execPath: 'C:\\Program Files\\nodejs\\node.exe',
    platform: 'win32',
    arch: 'x64',
    version: 'v18.19.0',
    versions: { node: '18.19.0', v8: '10.2.154.26-node.28', uv: '1.44.2', modules: '108' },
    release: { name: 'node', lts: 'Hydrogen' },
    pid: 4242,
    ppid: 4000,
    title: 'node',
    exitCode: undefined,
    config: { variables: {} },
    features: {},
    cwd: () => processCwd,
    chdir: (d) => {
        processCwd = pathMod.resolve(d);
    },
    exit(code) {
        recExit(String(code === undefined ? 0 : code));
        const e = new Error('process.exit(' + (code === undefined ? 0 : code) + ')');
        e[EXIT] = true;
        throw e;
    },
    kill: (pid, sig) => {
        recKill(pid + ' ' + (sig || 'SIGTERM'));
        return true;
    },
    abort() {
        processObj.exit(134);
    },
    nextTick: (fn, ...args) => {
        later(() => fn(...args));
    },
    uptime: () => (H.now() - H.start()) / 1000,
    memoryUsage: () => ({ rss: 50331648, heapTotal: 16777216, heapUsed: 8388608, external: 1048576, arrayBuffers: 65536 }),
    cpuUsage: () => ({ user: 0, system: 0 }),
    resourceUsage: () => ({}),
    umask: () => 0o22,
    emitWarning: () => {},
    binding: () => {
        throw new Error('process.binding is not supported');
    },
    stdout: { write: (s) => (H.log('stdout', String(s)), true), isTTY: false, columns: 80, on() {} },
    stderr: { write: (s) => (H.log('stderr', String(s)), true), isTTY: false, columns: 80, on() {} },
    stdin: Object.assign(new EventEmitter(), { isTTY: false, setEncoding() {}, resume() {}, pause() {} }),
});
processObj.hrtime = (prev) => {
    const ms = H.now() - H.start();
    let s = Math.floor(ms / 1000);
    let ns = Math.round((ms % 1000) * 1e6);
    if (prev) {
        s -= prev[0];
        ns -= prev[1];
        if (ns < 0) {
            s -= 1;
            ns += 1e9;
        }
    }
    return [s, ns];
};
processObj.hrtime.bigint = () => BigInt(Math.round((H.now() - H.start()) * 1e6));

// ---- fs

function fsPath(p) {
    if (p instanceof URLImpl) p = p.pathname;
    if (Buffer.isBuffer(p)) p = p.toString();
    return pathMod.resolve(String(p));
}

function fsError(code, syscall, p) {
    const msg = { ENOENT: 'no such file or directory', EISDIR: 'illegal operation on a directory', ENOTDIR: 'not a directory', EEXIST: 'file already exists' }[code];
    const e = new Error(`${code}: ${msg}, ${syscall} '${p}'`);
    e.code = code;
    e.syscall = syscall;
    e.path = p;
    e.errno = -2;
    return e;
}

function dataString(d, enc) {
    if (typeof d === 'string') return enc && !/^utf-?8$/i.test(enc) ? decodeBytes(encodeString(d, enc), 'utf8') : d;
    if (ArrayBuffer.isView(d)) return utf8Decode(new Uint8Array(d.buffer, d.byteOffset, d.byteLength));
    return String(d);
}

const encOf = (o) => (typeof o === 'string' ? o : o && o.encoding);

const fsCore = {
    readFile(p, opts) {
        const abs = fsPath(p);
        if (H.fs('isdir', abs)) throw fsError('EISDIR', 'read', abs);
        const s = H.fs('read', abs);
        if (s === null) throw fsError('ENOENT', 'open', abs);
        const enc = encOf(opts);
        return enc ? decodeBytes(utf8Encode(s), enc) : Buffer.from(s);
    },
    writeFile(p, data, opts) {
        H.fs('write', fsPath(p), dataString(data, encOf(opts)), opts && opts.flag === 'a');
    },
    appendFile(p, data, opts) {
        H.fs('write', fsPath(p), dataString(data, encOf(opts)), true);
    },
    unlink(p) {
        const abs = fsPath(p);
        if (!H.fs('remove', abs)) throw fsError('ENOENT', 'unlink', abs);
    },
    rm(p, opts) {
        const abs = fsPath(p);
        if (!H.fs('remove', abs) && !(opts && opts.force)) throw fsError('ENOENT', 'rm', abs);
    },
    mkdir(p) {
        H.fs('mkdir', fsPath(p));
        return undefined;
    },
    readdir(p) {
        const abs = fsPath(p);
        const l = H.fs('list', abs);
        if (l === null) throw fsError(H.fs('exists', abs) ? 'ENOTDIR' : 'ENOENT', 'scandir', abs);
        return l;
    },
    copyFile(a, b) {
        const s = H.fs('read', fsPath(a));
        if (s === null) throw fsError('ENOENT', 'copyfile', fsPath(a));
        H.fs('write', fsPath(b), s, false);
    },
    rename(a, b) {
        const s = H.fs('read', fsPath(a));
        if (s === null) throw fsError('ENOENT', 'rename', fsPath(a));
        H.fs('write', fsPath(b), s, false);
        H.fs('remove', fsPath(a));
    },
    chmod() {},
    stat(p) {
        const abs = fsPath(p);
        if (!H.fs('exists', abs)) throw fsError('ENOENT', 'stat', abs);
        const dir = H.fs('isdir', abs);
        const size = dir ? 0 : utf8Encode(H.fs('read', abs)).length;
        const t = new VDate(H.start());
        return {
            size,
            mode: dir ? 0o40755 : 0o100644,
            isFile: () => !dir,
            isDirectory: () => dir,
            isSymbolicLink: () => false,
            mtimeMs: H.start(),
            mtime: t,
            ctime: t,
            atime: t,
            birthtime: t,
        };
    },
    access(p) {
        const abs = fsPath(p);
        if (!H.fs('exists', abs)) throw fsError('ENOENT', 'access', abs);
    },
};

const fsRecorded = ['readFile', 'writeFile', 'appendFile', 'unlink', 'rm', 'mkdir', 'readdir', 'copyFile', 'rename', 'chmod'];
const fsMod = { constants: { F_OK: 0, R_OK: 4, W_OK: 2, X_OK: 1 } };
const fsPromises = {};
for (const op of Object.keys(fsCore)) {
    const recorded = fsRecorded.includes(op);
    const sync = recorded ? wrap('fs.' + op + 'Sync', fsCore[op]) : fsCore[op];
    const async = recorded ? wrap('fs.' + op, fsCore[op]) : fsCore[op];
    const promised = recorded ? wrap('fs.promises.' + op, fsCore[op]) : fsCore[op];
    fsMod[op + 'Sync'] = sync;
    fsMod[op] = (...args) => {
        const cb = lastFn(args);
        if (cb) args = args.slice(0, -1);
        let res;
        let err = null;
        try {
            res = async(...args);
        } catch (e) {
            err = e;
        }
        if (cb) later(() => cb(err, res));
    };
    fsPromises[op] = (...args) => new Promise((resolve) => resolve(promised(...args)));
}
fsMod.existsSync = (p) => H.fs('exists', fsPath(p));
fsMod.exists = (p, cb) => later(() => cb(H.fs('exists', fsPath(p))));
fsMod.lstatSync = fsMod.statSync;
fsMod.lstat = fsMod.stat;
fsMod.realpathSync = (p) => fsPath(p);
fsMod.realpathSync.native = fsMod.realpathSync;
fsMod.realpath = (p, ...r) => later(() => lastFn(r)(null, fsPath(p)));
const recWriteStream = R('fs.createWriteStream');
fsMod.createWriteStream = (p, opts) => {
    const abs = fsPath(p);
    recWriteStream(abs);
    let buf = '';
    const s = new EventEmitter();
    Object.assign(s, {
        path: abs,
        write(chunk, enc, cb) {
            buf += dataString(chunk);
            if (typeof (cb || enc) === 'function') later(cb || enc);
            return true;
        },
        end(chunk, enc, cb) {
            if (chunk && typeof chunk !== 'function') buf += dataString(chunk);
            H.fs('write', abs, buf, !!(opts && opts.flags === 'a'));
            later(() => {
                s.emit('finish');
                s.emit('close');
            });
            const done = [chunk, enc, cb].find((x) => typeof x === 'function');
            if (done) later(done);
            return s;
        },
        close(cb) {
            if (cb) later(cb);
        },
    });
    return s;
};
fsMod.createReadStream = (p) => {
    const s = new EventEmitter();
    later(() => {
        try {
            s.emit('data', fsCore.readFile(p));
            s.emit('end');
        } catch (e) {
            s.emit('error', e);
        }
        s.emit('close');
    });
    s.pipe = (dst) => {
        s.on('data', (d) => dst.write(d));
        s.on('end', () => dst.end && dst.end());
        return dst;
    };
    s.setEncoding = () => s;
    return s;
};
fsPromises.stat = (p) => new Promise((r) => r(fsCore.stat(p)));
fsPromises.access = (p) => new Promise((r) => r(fsCore.access(p)));
fsMod.promises = fsPromises;

// ---- child_process

function childHandle(cmd) {
    const cp = new EventEmitter();
    const out = new EventEmitter();
    const err = new EventEmitter();
    out.setEncoding = err.setEncoding = () => {};
    out.pipe = err.pipe = (d) => d;
    Object.assign(cp, {
        pid: 5000,
        stdout: out,
        stderr: err,
        stdin: { write() { return true; }, end() {} },
        killed: false,
        exitCode: null,
        spawnfile: cmd,
        kill() {
            return true;
        },
        unref() {},
        ref() {},
    });
    later(() => {
        cp.exitCode = 0;
        out.emit('end');
        cp.emit('exit', 0, null);
        cp.emit('close', 0, null);
    });
    return cp;
}

function commandLine(file, args) {
    return [String(file), ...(Array.isArray(args) ? args.map(String) : [])].join(' ');
}

function processHook(name) {
    H.declare(name);
    return (line) => H.api(name, line);
}

const recExec = processHook('child_process.exec');
const recExecSync = processHook('child_process.execSync');
const recExecFile = processHook('child_process.execFile');
const recExecFileSync = processHook('child_process.execFileSync');
const recSpawn = processHook('child_process.spawn');
const recSpawnSync = processHook('child_process.spawnSync');
const recFork = processHook('child_process.fork');

const childProcessMod = {
    exec(cmd, opts, cb) {
        recExec(String(cmd));
        const done = typeof opts === 'function' ? opts : cb;
        const cp = childHandle(cmd);
        if (done) later(() => done(null, '', ''));
        return cp;
    },
    execSync(cmd, opts) {
        recExecSync(String(cmd));
        return opts && opts.encoding && opts.encoding !== 'buffer' ? '' : Buffer.alloc(0);
    },
    execFile(file, args, opts, cb) {
        recExecFile(commandLine(file, args));
        const done = [args, opts, cb].find((x) => typeof x === 'function');
        const cp = childHandle(file);
        if (done) later(() => done(null, '', ''));
        return cp;
    },
    execFileSync(file, args, opts) {
        recExecFileSync(commandLine(file, args));
        const o = Array.isArray(args) ? opts : args;
        return o && o.encoding && o.encoding !== 'buffer' ? '' : Buffer.alloc(0);
    },
    spawn(cmd, args) {
        recSpawn(commandLine(cmd, args));
        return childHandle(cmd);
    },
    spawnSync(cmd, args) {
        recSpawnSync(commandLine(cmd, args));
        return { pid: 5000, status: 0, signal: null, output: [null, Buffer.alloc(0), Buffer.alloc(0)], stdout: Buffer.alloc(0), stderr: Buffer.alloc(0) };
    },
    fork(modulePath, args) {
        recFork(commandLine(modulePath, args));
        const cp = childHandle(modulePath);
        cp.send = () => true;
        cp.disconnect = () => {};
        return cp;
    },
};

// ---- http / https / net / dns

function requestUrl(proto, a, b) {
    if (typeof a === 'string' || a instanceof URLImpl) {
        const u = new URLImpl(String(a));
        return { url: u.href, opts: typeof b === 'object' && b ? b : {} };
    }
    const o = a || {};
    const protocol = o.protocol || proto;
    const host = o.hostname || (o.host ? String(o.host).split(':')[0] : 'localhost');
    const port = o.port ? ':' + o.port : '';
    return { url: protocol + '//' + host + port + (o.path || '/'), opts: o };
}

const recHttp = { 'http:': R('http.request'), 'https:': R('https.request') };

function httpModule(proto) {
    const recRequest = recHttp[proto];
    const request = (a, b, c) => {
        const { url, opts } = requestUrl(proto, a, b);
        const cb = [b, c].find((x) => typeof x === 'function');
        const method = String(opts.method || 'GET').toUpperCase();
        recRequest(method + ' ' + url);
        const req = new EventEmitter();
        let body = '';
        let sent = false;
        Object.assign(req, {
            method,
            path: opts.path || new URLImpl(url).pathname,
            setHeader() {},
            getHeader() {},
            removeHeader() {},
            setTimeout() {
                return req;
            },
            setNoDelay() {},
            abort() {},
            destroy() {},
            write(chunk) {
                body += dataString(chunk);
                return true;
            },
            end(chunk) {
                if (sent) return req;
                sent = true;
                if (chunk && typeof chunk !== 'function') body += dataString(chunk);
                const r = H.net(method, url, body);
                later(() => {
                    if (r.error !== undefined) {
                        const e = new Error('getaddrinfo ENOTFOUND ' + hostOf(url));
                        e.code = 'ENOTFOUND';
                        req.emit('error', e);
                        return;
                    }
                    const res = new EventEmitter();
                    Object.assign(res, {
                        statusCode: r.status,
                        statusMessage: '',
                        headers: {},
                        setEncoding() {},
                        resume() {},
                        pipe(d) {
                            res.on('data', (x) => d.write(x));
                            res.on('end', () => d.end && d.end());
                            return d;
                        },
                    });
                    if (cb) cb(res);
                    req.emit('response', res);
                    later(() => {
                        if (r.body.length) res.emit('data', Buffer.from(r.body));
                        res.emit('end');
                    });
                });
                return req;
            },
        });
        return req;
    };
    const mod = {
        request,
        get(a, b, c) {
            const req = request(a, b, c);
            req.end();
            return req;
        },
        createServer: () => stub(proto.slice(0, -1) + '.createServer'),
        Agent: class Agent {},
        STATUS_CODES: { 200: 'OK', 404: 'Not Found', 500: 'Internal Server Error' },
        METHODS: ['GET', 'POST', 'PUT', 'DELETE', 'PATCH', 'HEAD', 'OPTIONS'],
    };
    mod.globalAgent = new mod.Agent();
    return mod;
}

const recConnect = R('net.connect');
function netConnect(a, b, cb) {
    const o = typeof a === 'object' ? a : { port: a, host: typeof b === 'string' ? b : 'localhost' };
    const url = 'tcp://' + (o.host || 'localhost') + ':' + o.port;
    recConnect(url);
    const sock = new EventEmitter();
    const r = H.net('connect', url, '');
    Object.assign(sock, {
        write(d) {
            H.net('socket-send', url, dataString(d));
            return true;
        },
        end() {},
        destroy() {},
        setEncoding() {},
        setTimeout() {},
        setKeepAlive() {},
        pipe: (d) => d,
    });
    later(() => {
        if (r.error !== undefined) {
            const e = new Error('connect ECONNREFUSED ' + url);
            e.code = 'ECONNREFUSED';
            sock.emit('error', e);
            sock.emit('close', true);
        } else {
            const done = [b, cb].find((x) => typeof x === 'function');
            if (done) done();
            sock.emit('connect');
        }
    });
    return sock;
}

const recLookup = R('dns.lookup');
function dnsLookup(host, opts, cb) {
    const done = typeof opts === 'function' ? opts : cb;
    recLookup(String(host));
    const r = H.net('dns-lookup', 'dns://' + host, '');
    later(() => {
        if (r.error !== undefined) {
            const e = new Error('getaddrinfo ENOTFOUND ' + host);
            e.code = 'ENOTFOUND';
            done(e);
        } else done(null, '192.0.2.1', 4);
    });
}

// ---- crypto

const hashName = (alg) => String(alg).toLowerCase().replace(/-/g, '');
function hashObject(alg, key) {
    let data = '';
    return {
        update(d, enc) {
            data += latin1Decode(typeof d === 'string' ? encodeString(d, enc) : Buffer.from(d));
            return this;
        },
        digest(enc) {
            const hex = H.hash(hashName(alg), data, key === undefined ? null : key);
            return enc === 'hex' ? hex : enc ? decodeBytes(encodeString(hex, 'hex'), enc) : Buffer.from(hex, 'hex');
        },
    };
}

const cryptoMod = {
    createHash: (alg) => hashObject(alg),
    createHmac: (alg, key) => hashObject(alg, latin1Decode(typeof key === 'string' ? utf8Encode(key) : Buffer.from(key))),
    randomBytes(n, cb) {
        const b = Buffer.alloc(n);
        randomBytesInto(b);
        if (cb) later(() => cb(null, b));
        return b;
    },
    randomUUID,
    randomInt(a, b) {
        const [lo, hi] = b === undefined ? [0, a] : [a, b];
        return lo + Math.floor(nextRandom() * (hi - lo));
    },
    getRandomValues: G.crypto.getRandomValues,
    webcrypto: G.crypto,
    getHashes: () => ['md5', 'sha1', 'sha256', 'sha384', 'sha512'],
    timingSafeEqual: (a, b) => Buffer.from(a).equals(Buffer.from(b)),
};

// ---- misc modules

function format(f, ...args) {
    if (typeof f !== 'string') return [f, ...args].map(brief).join(' ');
    let i = 0;
    const s = f.replace(/%[sdifjoO%]/g, (m) => {
        if (m === '%%') return '%';
        if (i >= args.length) return m;
        const a = args[i++];
        if (m === '%d' || m === '%i') return String(parseInt(a, 10));
        if (m === '%f') return String(parseFloat(a));
        return typeof a === 'string' && m === '%s' ? a : brief(a);
    });
    return [s, ...args.slice(i).map(brief)].join(' ');
}

const utilMod = {
    format,
    inspect: (v) => brief(v),
    promisify: (fn) => (...args) =>
        new Promise((res, rej) => {
            fn(...args, (err, v) => (err ? rej(err) : res(v)));
        }),
    callbackify: (fn) => (...args) => {
        const cb = args.pop();
        fn(...args).then((v) => cb(null, v), (e) => cb(e));
    },
    inherits(ctor, superCtor) {
        Object.setPrototypeOf(ctor.prototype, superCtor.prototype);
        ctor.super_ = superCtor;
    },
    deprecate: (fn) => fn,
    isDeepStrictEqual: (a, b) => brief(a) === brief(b),
    types: { isPromise: (p) => p instanceof Promise, isDate: (d) => d instanceof RealDate, isRegExp: (r) => r instanceof RegExp },
    TextEncoder: TextEncoderImpl,
    TextDecoder: TextDecoderImpl,
};

const queryMod = {
    parse: (s) => {
        const out = {};
        for (const [k, v] of new URLSearchParamsImpl(String(s))) out[k] = k in out ? [].concat(out[k], v) : v;
        return out;
    },
    stringify: (o) => new URLSearchParamsImpl(Object.entries(o || {}).flatMap(([k, v]) => (Array.isArray(v) ? v.map((x) => [k, x]) : [[k, v]]))).toString(),
    escape: encodeURIComponent,
    unescape: decodeURIComponent,
};

function assertMod(v, msg) {
    if (!v) throw new Error(msg || 'Assertion failed');
}
Object.assign(assertMod, {
    ok: assertMod,
    equal: (a, b, m) => assertMod(a == b, m),
    strictEqual: (a, b, m) => assertMod(a === b, m),
    notStrictEqual: (a, b, m) => assertMod(a !== b, m),
    deepEqual: (a, b, m) => assertMod(brief(a) === brief(b), m),
    deepStrictEqual: (a, b, m) => assertMod(brief(a) === brief(b), m),
    throws(fn, m) {
        try {
            fn();
        } catch (e) {
            return;
        }
        throw new Error(m || 'Missing expected exception');
    },
});
assertMod.strict = assertMod;

const osMod = {
    EOL: '\r\n',
    platform: () => 'win32',
    type: () => 'Windows_NT',
    arch: () => 'x64',
    release: () => '10.0.19045',
    version: () => 'Windows 10 Pro',
    hostname: () => 'DESKTOP-SANDBOX',
    homedir: () => HOME,
    tmpdir: () => '/tmp',
    endianness: () => 'LE',
    uptime: () => 3600 + (H.now() - H.start()) / 1000,
    loadavg: () => [0, 0, 0],
    totalmem: () => 17179869184,
    freemem: () => 8589934592,
    cpus: () => [0, 1, 2, 3].map(() => ({ model: 'Virtual CPU', speed: 2400, times: { user: 0, nice: 0, sys: 0, idle: 0, irq: 0 } })),
    networkInterfaces: () => ({}),
    userInfo: () => ({ uid: -1, gid: -1, username: 'analyst', homedir: HOME, shell: null }),
    constants: { signals: {}, errno: {} },
};

class StreamBase extends EventEmitter {
    pipe(d) {
        this.on('data', (x) => d.write(x));
        this.on('end', () => d.end && d.end());
        return d;
    }
    write(c) {
        this.emit('data', c);
        return true;
    }
    end(c) {
        if (c && typeof c !== 'function') this.write(c);
        later(() => {
            this.emit('end');
            this.emit('finish');
        });
        return this;
    }
    push(c) {
        if (c === null) later(() => this.emit('end'));
        else this.emit('data', c);
        return true;
    }
    destroy() {
        return this;
    }
    setEncoding() {
        return this;
    }
    resume() {
        return this;
    }
    pause() {
        return this;
    }
}
const streamMod = StreamBase;
Object.assign(streamMod, {
    Stream: StreamBase,
    Readable: class Readable extends StreamBase {},
    Writable: class Writable extends StreamBase {},
    Duplex: class Duplex extends StreamBase {},
    Transform: class Transform extends StreamBase {},
    PassThrough: class PassThrough extends StreamBase {},
    pipeline: (...s) => {
        const cb = lastFn(s);
        if (cb) later(() => cb(null));
    },
    finished: (s, cb) => later(() => cb(null)),
});

const recVm = R('vm.runInThisContext');
const runCode = (code) => {
    recVm(String(code));
    return realEval(String(code));
};
const vmMod = {
    runInThisContext: runCode,
    runInNewContext: runCode,
    runInContext: runCode,
    createContext: (o) => o || {},
    isContext: () => true,
    Script: class Script {
        constructor(code) {
            this.code = code;
        }
        runInThisContext() {
            return runCode(this.code);
        }
        runInNewContext() {
            return runCode(this.code);
        }
        runInContext() {
            return runCode(this.code);
        }
    },
};

const timersMod = {
    setTimeout: G.setTimeout,
    setInterval: G.setInterval,
    clearTimeout: G.clearTimeout,
    clearInterval: G.clearInterval,
    setImmediate: (fn, ...a) => G.setTimeout(fn, 0, ...a),
    clearImmediate: G.clearTimeout,
};
const timersPromises = {
    setTimeout: (ms, v) => new Promise((res) => G.setTimeout(() => res(v), ms)),
    setImmediate: (v) => new Promise((res) => G.setTimeout(() => res(v), 0)),
};

const urlMod = {
    URL: URLImpl,
    URLSearchParams: URLSearchParamsImpl,
    parse(s) {
        try {
            const u = new URLImpl(String(s));
            return { protocol: u.protocol, host: u.host, hostname: u.hostname, port: u.port || null, pathname: u.pathname, search: u.search || null, query: u.search.slice(1) || null, hash: u.hash || null, path: u.pathname + u.search, href: u.href };
        } catch (e) {
            return { pathname: String(s), path: String(s), href: String(s) };
        }
    },
    format: (u) => (typeof u === 'string' ? u : u.href || (u.protocol || 'http:') + '//' + (u.host || u.hostname || '') + (u.pathname || '/') + (u.search || '')),
    fileURLToPath: (u) => decodeURIComponent(new URLImpl(String(u)).pathname),
    pathToFileURL: (p) => new URLImpl('file://' + pathMod.resolve(p)),
    resolve: (from, to) => new URLImpl(to, from).href,
};

class StringDecoder {
    constructor(enc) {
        this.enc = enc;
    }
    write(b) {
        return decodeBytes(b, this.enc);
    }
    end(b) {
        return b ? decodeBytes(b, this.enc) : '';
    }
}

// ---- vscode (defined in vscode.js for the vscode realm)

let vscodeModule = null;

// ---- module table

const builtinFactories = {
    assert: () => assertMod,
    buffer: () => ({ Buffer, constants: { MAX_LENGTH: 4294967296 } }),
    child_process: () => childProcessMod,
    crypto: () => cryptoMod,
    dns: () => fallback({ lookup: dnsLookup, promises: { lookup: (h) => new Promise((res, rej) => dnsLookup(h, (e, a, f) => (e ? rej(e) : res({ address: a, family: f })))) } }, 'node:dns'),
    events: () => EventEmitter,
    fs: () => fsMod,
    'fs/promises': () => fsPromises,
    http: () => httpModule('http:'),
    https: () => httpModule('https:'),
    module: () => ({ createRequire: (f) => makeRequire(pathMod.dirname(fsPath(String(f).replace(/^file:\/\//, '')))), builtinModules: Object.keys(builtinFactories) }),
    net: () => fallback({ connect: netConnect, createConnection: netConnect, isIP: (s) => (/^\d+\.\d+\.\d+\.\d+$/.test(s) ? 4 : s.includes(':') ? 6 : 0), Socket: EventEmitter }, 'node:net'),
    os: () => osMod,
    path: () => pathMod,
    'path/posix': () => pathMod,
    perf_hooks: () => ({ performance: G.performance }),
    process: () => processObj,
    querystring: () => queryMod,
    stream: () => streamMod,
    string_decoder: () => ({ StringDecoder }),
    timers: () => timersMod,
    'timers/promises': () => timersPromises,
    tty: () => ({ isatty: () => false }),
    url: () => urlMod,
    util: () => utilMod,
    vm: () => vmMod,
    zlib: () => fallback({}, 'node:zlib'),
    tls: () => fallback({}, 'node:tls'),
    dgram: () => fallback({}, 'node:dgram'),
    worker_threads: () => fallback({ isMainThread: true }, 'node:worker_threads'),
    cluster: () => fallback({ isMaster: true, isPrimary: true }, 'node:cluster'),
    readline: () => fallback({}, 'node:readline'),
    http2: () => fallback({}, 'node:http2'),
    v8: () => fallback({}, 'node:v8'),
    inspector: () => fallback({}, 'node:inspector'),
    async_hooks: () => fallback({}, 'node:async_hooks'),
    constants: () => ({}),
};
const builtinCache = Object.create(null);

function builtin(name) {
    if (name === 'vscode' && vscodeModule) return vscodeModule();
    if (!(name in builtinCache)) builtinCache[name] = builtinFactories[name]();
    return builtinCache[name];
}

function builtinName(req) {
    const n = req.startsWith('node:') ? req.slice(5) : req;
    if (n in builtinFactories) return n;
    if (n === 'vscode' && vscodeModule) return n;
    return null;
}

function isFile(p) {
    return H.fs('exists', p) && !H.fs('isdir', p);
}

function tryFile(p) {
    for (const ext of ['', '.js', '.json', '.cjs', '.mjs', '.node']) if (isFile(p + ext)) return p + ext;
    return null;
}

function tryDir(p) {
    if (!H.fs('isdir', p)) return null;
    const pkg = pathMod.join(p, 'package.json');
    if (isFile(pkg)) {
        try {
            const main = JSON.parse(H.fs('read', pkg)).main;
            if (main) {
                const m = tryFile(pathMod.join(p, main)) || tryFile(pathMod.join(p, main, 'index'));
                if (m) return m;
            }
        } catch (e) {}
    }
    return tryFile(pathMod.join(p, 'index'));
}

function resolveFile(dir, req) {
    if (/^(\.{1,2}(\/|$)|\/)/.test(req)) {
        const base = pathMod.resolve(dir, req);
        return tryFile(base) || tryDir(base);
    }
    for (let d = dir; ; d = pathMod.dirname(d)) {
        if (!d.endsWith('/node_modules')) {
            const base = pathMod.join(d, 'node_modules', req);
            const f = tryFile(base) || tryDir(base);
            if (f) return f;
        }
        if (d === '/') return null;
    }
}

// Artifact-relative name used as the script name, so event origins read
// like manifest paths.
const originName = (abs) => (abs.startsWith('/ext/') ? abs.slice(5) : abs);

const moduleCache = Object.create(null);

function loadFile(abs) {
    if (moduleCache[abs]) return moduleCache[abs].exports;
    const src = H.fs('read', abs);
    const module = { id: abs, filename: abs, loaded: false, exports: {}, children: [], paths: [], parent: null };
    moduleCache[abs] = module;
    if (abs.endsWith('.json')) {
        module.exports = JSON.parse(src);
    } else if (abs.endsWith('.node')) {
        delete moduleCache[abs];
        throw new Error('native addon ' + originName(abs) + ' cannot be loaded in the sandbox');
    } else if (abs.endsWith('.mjs')) {
        delete moduleCache[abs];
        const e = new Error('require() of ES Module ' + originName(abs) + ' not supported.');
        e.code = 'ERR_REQUIRE_ESM';
        throw e;
    } else {
        const body = src.startsWith('#!') ? '//' + src.slice(2) : src;
        const fn = H.compile('(function (exports, require, module, __filename, __dirname) {' + body + '\n})', originName(abs));
        const req = makeRequire(pathMod.dirname(abs));
        module.require = req;
        try {
            fn.call(module.exports, module.exports, req, module, abs, pathMod.dirname(abs));
        } catch (e) {
            delete moduleCache[abs];
            throw e;
        }
    }
    module.loaded = true;
    return module.exports;
}

function makeRequire(dir) {
    const require = function require(req) {
        req = String(req);
        const b = builtinName(req);
        if (b) return builtin(b);
        const f = resolveFile(dir, req);
        if (f) return loadFile(f);
        if (req.startsWith('node:') || !/^[.\/]/.test(req)) {
            recUnimpl('require:' + req);
        }
        const e = new Error("Cannot find module '" + req + "'");
        e.code = 'MODULE_NOT_FOUND';
        throw e;
    };
    require.resolve = (req) => {
        if (builtinName(req)) return req;
        const f = resolveFile(dir, String(req));
        if (!f) {
            const e = new Error("Cannot find module '" + req + "'");
            e.code = 'MODULE_NOT_FOUND';
            throw e;
        }
        return f;
    };
    require.cache = moduleCache;
    require.main = undefined;
    return require;
}

dispatch.resolveModule = (baseName, req) => {
    const b = builtinName(req);
    if (b) return 'node:' + b;
    const dir = pathMod.dirname('/ext/' + baseName);
    const f = resolveFile(dir, req);
    if (!f) throw new Error("Cannot find module '" + req + "' imported from " + baseName);
    return originName(f);
};
dispatch.builtinKeys = (name) => Object.keys(builtin(name)).filter((k) => k !== 'default');
Object.defineProperty(G, Symbol.for('extsleuth.builtin'), { value: builtin });

dispatch.isExit = (e) => !!(e && typeof e === 'object' && e[EXIT]);

dispatch.runMain = (rel, stage, args) => {
    const abs = '/ext/' + rel;
    processObj.argv = [processObj.argv[0], abs, ...(args || [])];
    if (stage) processEnv.npm_lifecycle_event = stage;
    else delete processEnv.npm_lifecycle_event;
    return loadFile(abs);
};

if (isNode) {
    G.process = processObj;
    G.Buffer = Buffer;
    G.global = G;
    G.setImmediate = timersMod.setImmediate;
    G.clearImmediate = timersMod.clearImmediate;
    G.require = makeRequire(processCwd);
}
