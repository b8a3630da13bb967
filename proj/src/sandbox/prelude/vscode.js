// Synthetic 'vscode' module and the activation context.

class Disposable {
    constructor(fn) {
        this._fn = fn;
    }
    dispose() {
        if (this._fn) this._fn();
        this._fn = null;
    }
    static from(...ds) {
        return new Disposable(() => ds.forEach((d) => d && d.dispose && d.dispose()));
    }
}

class VsEventEmitter {
    constructor() {
        this._ls = [];
        this.event = (fn, thisArg) => {
            const l = (e) => fn.call(thisArg, e);
            this._ls.push(l);
            return new Disposable(() => (this._ls = this._ls.filter((x) => x !== l)));
        };
    }
    fire(e) {
        for (const l of this._ls.slice()) l(e);
    }
    dispose() {
        this._ls = [];
    }
}

const vsEvent = () => new VsEventEmitter().event;
const inert = () => new Disposable();

class Uri {
    constructor(scheme, authority, path, query, fragment) {
        this.scheme = scheme;
        this.authority = authority || '';
        this.path = path || '/';
        this.query = query || '';
        this.fragment = fragment || '';
    }
    get fsPath() {
        return this.path;
    }
    with(c) {
        return new Uri(c.scheme || this.scheme, c.authority === undefined ? this.authority : c.authority, c.path || this.path, c.query === undefined ? this.query : c.query, c.fragment === undefined ? this.fragment : c.fragment);
    }
    toString() {
        return this.scheme + '://' + this.authority + this.path + (this.query ? '?' + this.query : '') + (this.fragment ? '#' + this.fragment : '');
    }
    toJSON() {
        return this.toString();
    }
    static file(p) {
        return new Uri('file', '', pathNormalize(String(p)));
    }
    static parse(s) {
        const m = /^([a-zA-Z][\w+.\-]*):(?:\/\/([^/?#]*))?([^?#]*)(?:\?([^#]*))?(?:#(.*))?$/.exec(String(s));
        return m ? new Uri(m[1], m[2], m[3], m[4], m[5]) : Uri.file(s);
    }
    static joinPath(u, ...parts) {
        return u.with({ path: pathMod.join(u.path, ...parts) });
    }
}

class Position {
    constructor(line, character) {
        this.line = line;
        this.character = character;
    }
}
class Range {
    constructor(a, b, c, d) {
        this.start = a instanceof Position ? a : new Position(a, b);
        this.end = a instanceof Position ? b : new Position(c, d);
    }
}
class Selection extends Range {}

function memento(store) {
    return {
        get: (k, d) => (store.has(k) ? copyJson(store.get(k)) : d),
        update: (k, v) => {
            store.set(k, copyJson(v));
            return Promise.resolve();
        },
        keys: () => [...store.keys()],
        setKeysForSync() {},
    };
}

const copyJson = (v) => (v === undefined ? undefined : JSON.parse(JSON.stringify(v)));

const commandTable = new Map();
const recInstall = R('workbench.extensions.installExtension');
const clipboardText = () => (scenario.clipboardText === null || scenario.clipboardText === undefined ? '' : scenario.clipboardText);

function configuration(section) {
    const key = (k) => (section ? section + '.' + k : k);
    const has = (k) => Object.prototype.hasOwnProperty.call(scenario.dummyStorage, key(k));
    return {
        get: (k, d) => (has(k) ? copyJson(scenario.dummyStorage[key(k)]) : d),
        has,
        inspect: (k) => ({ key: key(k), defaultValue: undefined, globalValue: has(k) ? scenario.dummyStorage[key(k)] : undefined }),
        update: wrapUpdate,
    };
}
const wrapUpdate = wrap('vscode.WorkspaceConfiguration.update', () => Promise.resolve());

const outputChannel = (name) => ({ name, append() {}, appendLine() {}, replace() {}, clear() {}, show() {}, hide() {}, dispose() {} });

const terminalSend = processHook('vscode.Terminal.sendText');

const vscodeApi = {
    version: '1.85.0',
    Uri,
    Disposable,
    EventEmitter: VsEventEmitter,
    Position,
    Range,
    Selection,
    StatusBarAlignment: { Left: 1, Right: 2 },
    ViewColumn: { Active: -1, Beside: -2, One: 1, Two: 2, Three: 3 },
    ConfigurationTarget: { Global: 1, Workspace: 2, WorkspaceFolder: 3 },
    ProgressLocation: { SourceControl: 1, Window: 10, Notification: 15 },
    ExtensionMode: { Production: 1, Development: 2, Test: 3 },
    DiagnosticSeverity: { Error: 0, Warning: 1, Information: 2, Hint: 3 },
    CompletionItemKind: { Text: 0, Method: 1, Function: 2, Variable: 5, Keyword: 13, Snippet: 14 },
    TreeItemCollapsibleState: { None: 0, Collapsed: 1, Expanded: 2 },
    TreeItem: class TreeItem {
        constructor(label, state) {
            this.label = label;
            this.collapsibleState = state;
        }
    },
    ThemeIcon: class ThemeIcon {
        constructor(id) {
            this.id = id;
        }
    },
    CompletionItem: class CompletionItem {
        constructor(label, kind) {
            this.label = label;
            this.kind = kind;
        }
    },
    MarkdownString: class MarkdownString {
        constructor(v) {
            this.value = v || '';
        }
        appendMarkdown(s) {
            this.value += s;
            return this;
        }
    },
    window: fallback(
        {
            showInformationMessage: wrap('vscode.window.showInformationMessage', () => Promise.resolve(undefined)),
            showWarningMessage: wrap('vscode.window.showWarningMessage', () => Promise.resolve(undefined)),
            showErrorMessage: wrap('vscode.window.showErrorMessage', () => Promise.resolve(undefined)),
            showInputBox: wrap('vscode.window.showInputBox', () => Promise.resolve(undefined)),
            showQuickPick: wrap('vscode.window.showQuickPick', () => Promise.resolve(undefined)),
            createOutputChannel: wrap('vscode.window.createOutputChannel', outputChannel),
            createStatusBarItem: wrap('vscode.window.createStatusBarItem', () => ({ text: '', tooltip: '', command: undefined, show() {}, hide() {}, dispose() {} })),
            createTerminal: wrap('vscode.window.createTerminal', (opts) => ({
                name: typeof opts === 'string' ? opts : (opts && opts.name) || 'terminal',
                sendText: (t) => terminalSend(String(t)),
                show() {},
                hide() {},
                dispose() {},
            })),
            createWebviewPanel: wrap('vscode.window.createWebviewPanel', () => ({
                webview: { html: '', options: {}, cspSource: '', onDidReceiveMessage: vsEvent(), postMessage: () => Promise.resolve(true), asWebviewUri: (u) => u },
                onDidDispose: vsEvent(),
                onDidChangeViewState: vsEvent(),
                reveal() {},
                dispose() {},
            })),
            registerTreeDataProvider: wrap('vscode.window.registerTreeDataProvider', inert),
            registerWebviewViewProvider: wrap('vscode.window.registerWebviewViewProvider', inert),
            withProgress: (opts, task) => Promise.resolve(task({ report() {} }, { isCancellationRequested: false, onCancellationRequested: vsEvent() })),
            setStatusBarMessage: () => new Disposable(),
            activeTextEditor: undefined,
            visibleTextEditors: [],
            onDidChangeActiveTextEditor: vsEvent(),
            onDidChangeTextEditorSelection: vsEvent(),
            onDidChangeWindowState: vsEvent(),
        },
        'vscode.window'
    ),
    workspace: fallback(
        {
            getConfiguration: wrap('vscode.workspace.getConfiguration', (section) => configuration(section)),
            workspaceFolders: [{ uri: Uri.file('/workspace'), name: 'workspace', index: 0 }],
            rootPath: '/workspace',
            name: 'workspace',
            findFiles: wrap('vscode.workspace.findFiles', () => Promise.resolve([])),
            openTextDocument: wrap('vscode.workspace.openTextDocument', (u) => Promise.resolve({ uri: u, fileName: String(u), languageId: 'plaintext', lineCount: 0, getText: () => '' })),
            fs: {
                readFile: wrap('vscode.workspace.fs.readFile', (u) => new Promise((res) => res(fsCore.readFile(u.fsPath || String(u))))),
                writeFile: wrap('vscode.workspace.fs.writeFile', (u, c) => new Promise((res) => res(fsCore.writeFile(u.fsPath || String(u), c)))),
            },
            onDidChangeConfiguration: vsEvent(),
            onDidSaveTextDocument: vsEvent(),
            onDidOpenTextDocument: vsEvent(),
            onDidChangeTextDocument: vsEvent(),
            onDidChangeWorkspaceFolders: vsEvent(),
            textDocuments: [],
        },
        'vscode.workspace'
    ),
    commands: fallback(
        {
            registerCommand: wrap('vscode.commands.registerCommand', (id, fn, thisArg) => {
                commandTable.set(String(id), fn.bind(thisArg));
                return new Disposable(() => commandTable.delete(String(id)));
            }),
            registerTextEditorCommand: wrap('vscode.commands.registerTextEditorCommand', inert),
            executeCommand: wrap('vscode.commands.executeCommand', (id, ...args) => {
                if (id === 'workbench.extensions.installExtension') recInstall(summarize(args));
                const fn = commandTable.get(String(id));
                return fn ? new Promise((res) => res(fn(...args))) : Promise.resolve(undefined);
            }),
            getCommands: wrap('vscode.commands.getCommands', () => Promise.resolve([...commandTable.keys()])),
        },
        'vscode.commands'
    ),
    env: fallback(
        {
            clipboard: {
                readText: wrap('vscode.env.clipboard.readText', () => Promise.resolve(clipboardText())),
                writeText: wrap('vscode.env.clipboard.writeText', () => Promise.resolve()),
            },
            openExternal: wrap('vscode.env.openExternal', () => Promise.resolve(true)),
            appName: 'Visual Studio Code',
            appRoot: 'C:\\Program Files\\Microsoft VS Code\\resources\\app',
            language: 'en',
            machineId: '0000000000000000000000000000000000000000000000000000000000000000',
            sessionId: '00000000-0000-4000-8000-000000000000',
            uriScheme: 'vscode',
            shell: 'C:\\Windows\\System32\\WindowsPowerShell\\v1.0\\powershell.exe',
            remoteName: undefined,
        },
        'vscode.env'
    ),
    extensions: fallback(
        {
            getExtension: wrap('vscode.extensions.getExtension', () => undefined),
            all: [],
            onDidChange: vsEvent(),
        },
        'vscode.extensions'
    ),
    languages: fallback(
        {
            registerCompletionItemProvider: wrap('vscode.languages.registerCompletionItemProvider', inert),
            registerHoverProvider: wrap('vscode.languages.registerHoverProvider', inert),
            registerCodeActionsProvider: wrap('vscode.languages.registerCodeActionsProvider', inert),
            registerDefinitionProvider: wrap('vscode.languages.registerDefinitionProvider', inert),
            createDiagnosticCollection: () => ({ set() {}, delete() {}, clear() {}, dispose() {} }),
        },
        'vscode.languages'
    ),
};

if (mode === 'vscode') {
    const api = fallback(vscodeApi, 'vscode');
    vscodeModule = () => api;
}

let asyncError = null;
dispatch.takeAsyncError = () => {
    const e = asyncError;
    asyncError = null;
    return e;
};

dispatch.activate = (exportsObj) => {
    const extPath = processCwd;
    const context = fallback(
        {
            subscriptions: [],
            extensionPath: extPath,
            extensionUri: Uri.file(extPath),
            globalState: memento(new Map()),
            workspaceState: memento(new Map()),
            secrets: { get: () => Promise.resolve(undefined), store: () => Promise.resolve(), delete: () => Promise.resolve(), onDidChange: vsEvent() },
            storagePath: '/tmp/workspaceStorage',
            globalStoragePath: '/tmp/globalStorage',
            logPath: '/tmp/logs',
            storageUri: Uri.file('/tmp/workspaceStorage'),
            globalStorageUri: Uri.file('/tmp/globalStorage'),
            logUri: Uri.file('/tmp/logs'),
            extensionMode: 1,
            asAbsolutePath: (p) => pathMod.join(extPath, p),
            environmentVariableCollection: { replace() {}, append() {}, prepend() {}, get() {}, delete() {}, clear() {} },
            extension: { id: String((manifest.publisher || 'unknown') + '.' + (manifest.name || 'unknown')), packageJSON: copyJson(manifest), extensionPath: extPath },
        },
        'vscode.ExtensionContext'
    );
    const activate = exportsObj && exportsObj.activate;
    if (typeof activate !== 'function') return false;
    const r = activate.call(exportsObj, context);
    if (r && typeof r.then === 'function')
        r.then(
            () => {},
            (e) => {
                asyncError = e instanceof Error ? e.name + ': ' + e.message : brief(e);
            }
        );
    return true;
};
