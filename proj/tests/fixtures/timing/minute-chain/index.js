const fs = require("fs");

// Sixty one-minute hops, each scheduled from the previous callback.
let ticks = 0;
function tick() {
  ticks += 1;
  if (ticks < 60) {
    setTimeout(tick, 60 * 1000);
  } else {
    fs.writeFileSync("/tmp/chain-done", String(Date.now()));
  }
}
setTimeout(tick, 60 * 1000);
