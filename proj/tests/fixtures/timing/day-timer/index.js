const fs = require("fs");
const path = require("path");
const os = require("os");

// Waits a full day before doing anything observable.
setTimeout(() => {
  fs.writeFileSync(path.join(os.tmpdir(), "delayed-report.txt"), new Date().toISOString());
}, 24 * 60 * 60 * 1000);
