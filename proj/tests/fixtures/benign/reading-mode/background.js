chrome.runtime.onInstalled.addListener(() => {
  chrome.storage.sync.set({ enabled: true, spacing: 1.6 });
});

chrome.runtime.onMessage.addListener((msg, sender, reply) => {
  if (msg && msg.type === "toggle") {
    chrome.storage.sync.get("enabled").then(({ enabled }) => {
      chrome.storage.sync.set({ enabled: !enabled });
      reply({ enabled: !enabled });
    });
    return true;
  }
});
