(async () => {
  const { enabled = true, spacing = 1.6 } = await chrome.storage.sync.get(["enabled", "spacing"]);
  if (!enabled) return;
  const root = document.documentElement;
  root.style.setProperty("line-height", String(spacing));
  root.style.setProperty("background-color", "#f6f1e7");
  root.style.setProperty("color", "#2b2b2b");
})();
