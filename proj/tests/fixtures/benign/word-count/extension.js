const vscode = require("vscode");

function count(text, includeNumbers) {
  const words = text.split(/\s+/).filter(Boolean);
  return includeNumbers ? words.length : words.filter((w) => !/^\d+$/.test(w)).length;
}

function activate(context) {
  const cmd = vscode.commands.registerCommand("wordCount.show", () => {
    const editor = vscode.window.activeTextEditor;
    const text = editor ? editor.document.getText() : "";
    const cfg = vscode.workspace.getConfiguration("wordCount");
    const n = count(text, cfg.get("includeNumbers", true));
    vscode.window.showInformationMessage(`Words: ${n}`);
  });
  context.subscriptions.push(cmd);
}

function deactivate() {}

module.exports = { activate, deactivate, count };
