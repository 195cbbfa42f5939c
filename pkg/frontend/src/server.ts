/**
 * Tiny static server for the console: serves index.html and the compiled
 * dist/ modules. The page talks to the egcnet service directly (the
 * service sends CORS headers), so no proxying is needed.
 *
 *   node dist/server.js --port 5173
 */

import * as fs from "node:fs";
import * as http from "node:http";
import * as path from "node:path";
import { fileURLToPath } from "node:url";

const here = path.dirname(fileURLToPath(import.meta.url));
const rootDir = path.resolve(here, "..");

const MIME: Record<string, string> = {
  ".html": "text/html; charset=utf-8",
  ".js": "text/javascript; charset=utf-8",
  ".css": "text/css; charset=utf-8",
  ".json": "application/json",
};

function readArg(name: string): string | undefined {
  const index = process.argv.indexOf(name);
  return index >= 0 ? process.argv[index + 1] : undefined;
}

const port = Number(readArg("--port") ?? "5173");
if (!Number.isInteger(port) || port < 1 || port > 65535) {
  console.error("Invalid --port value.");
  process.exit(1);
}

const server = http.createServer((req, res) => {
  const url = (req.url ?? "/").split("?")[0] ?? "/";
  const relative = url === "/" ? "index.html" : url.replace(/^\/+/, "");
  const file = path.resolve(rootDir, relative);
  if (!file.startsWith(rootDir)) {
    res.writeHead(403).end("forbidden");
    return;
  }
  fs.readFile(file, (err, data) => {
    if (err) {
      res.writeHead(404).end("not found");
      return;
    }
    res.writeHead(200, { "content-type": MIME[path.extname(file)] ?? "application/octet-stream" });
    res.end(data);
  });
});

server.listen(port, "127.0.0.1", () => {
  console.log(`console on http://127.0.0.1:${port} (pass ?api=http://host:port to point at the service)`);
});
