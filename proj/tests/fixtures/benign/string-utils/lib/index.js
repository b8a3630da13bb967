"use strict";

const { padStart, padEnd } = require("./pad");

function truncate(s, max, ellipsis = "...") {
  if (s.length <= max) return s;
  return s.slice(0, Math.max(0, max - ellipsis.length)) + ellipsis;
}

function camel(s) {
  return s.toLowerCase().replace(/[-_\s]+(.)?/g, (_, c) => (c ? c.toUpperCase() : ""));
}

function kebab(s) {
  return s
    .replace(/([a-z0-9])([A-Z])/g, "$1-$2")
    .replace(/[\s_]+/g, "-")
    .toLowerCase();
}

module.exports = { padStart, padEnd, truncate, camel, kebab };
