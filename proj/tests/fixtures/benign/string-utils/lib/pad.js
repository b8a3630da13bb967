"use strict";

function fill(n, ch) {
  let out = "";
  while (out.length < n) out += ch;
  return out.slice(0, n);
}

exports.padStart = (s, n, ch = " ") => fill(n - s.length, ch) + s;
exports.padEnd = (s, n, ch = " ") => s + fill(n - s.length, ch);
