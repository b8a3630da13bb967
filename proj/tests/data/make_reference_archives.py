#!/usr/bin/env python3
"""Regenerates the reference archives under tests/data/archives.

Archives are produced with the Python standard library (zipfile, tarfile,
gzip) so the C++ readers are checked against an independent writer. The
expected contents are written to expected.json as sha256 per entry.
"""
import gzip
import hashlib
import io
import json
import os
import struct
import tarfile
import zipfile

OUT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "archives")
FIXED_TIME = (2024, 12, 25, 0, 0, 0)

CHROME_FILES = {
    "manifest.json": b'{"manifest_version": 3, "name": "Ref", "version": "1.0",'
                     b' "permissions": ["cookies", "<all_urls>"],'
                     b' "background": {"service_worker": "bg.js"}}',
    "bg.js": b"chrome.cookies.getAll({}, function (c) { console.log(c.length); });\n" * 20,
}


def zip_bytes(entries, compression=zipfile.ZIP_DEFLATED):
    buf = io.BytesIO()
    with zipfile.ZipFile(buf, "w") as z:
        for name, data, comp in entries:
            info = zipfile.ZipInfo(name, FIXED_TIME)
            info.compress_type = comp if comp is not None else compression
            z.writestr(info, data)
    return buf.getvalue()


def crx3(zip_data, header=b"\x12\x00"):
    return b"Cr24" + struct.pack("<II", 3, len(header)) + header + zip_data


def tgz_bytes(entries, fmt=tarfile.USTAR_FORMAT):
    raw = io.BytesIO()
    with tarfile.open(fileobj=raw, mode="w", format=fmt) as t:
        for name, data in entries:
            info = tarfile.TarInfo(name)
            info.size = len(data)
            info.mtime = 1735084800
            t.addfile(info, io.BytesIO(data))
    return gzip.compress(raw.getvalue(), mtime=0)


def sha(data):
    return hashlib.sha256(data).hexdigest()


def main():
    os.makedirs(OUT, exist_ok=True)
    expected = {}

    def emit(name, data, files):
        with open(os.path.join(OUT, name), "wb") as f:
            f.write(data)
        expected[name] = {path: sha(content) for path, content in files.items()}

    chrome_zip = zip_bytes([
        ("manifest.json", CHROME_FILES["manifest.json"], zipfile.ZIP_STORED),
        ("bg.js", CHROME_FILES["bg.js"], zipfile.ZIP_DEFLATED),
    ])
    emit("chrome_two_files.zip", chrome_zip, CHROME_FILES)
    emit("chrome_two_files.crx", crx3(chrome_zip, b"\x0a\x04abcd"), CHROME_FILES)

    vsix_files = {
        "extension.vsixmanifest": b"<PackageManifest/>",
        "extension/package.json": b'{"name": "ref-vsix", "publisher": "acme", "version": "0.0.1",'
                                  b' "main": "./out/ext.js", "engines": {"vscode": "^1.80.0"}}',
        "extension/out/ext.js": b"exports.activate = function (ctx) {};\n",
    }
    emit("ref.vsix", zip_bytes([(k, v, None) for k, v in vsix_files.items()]), vsix_files)

    npm_files = {
        "package.json": b'{"name": "ref-npm", "version": "1.0.0",'
                        b' "scripts": {"postinstall": "node evil.js"}}',
        "evil.js": b"require('child_process').exec('id');\n",
        "index.js": b"module.exports = 1;\n",
    }
    emit("ref_npm.tgz",
         tgz_bytes([("package/" + k, v) for k, v in npm_files.items()]
                   + [("package/../../etc/x", b"nope")]),
         npm_files)

    long_dir = "package/lib/" + "d" * 120 + "/"
    long_files = {
        "package.json": b'{"name": "long", "version": "1.0.0"}',
        long_dir[len("package/"):] + "deep.js": b"deep();\n",
    }
    emit("ref_npm_gnu_long.tgz",
         tgz_bytes([("package/" + k, v) for k, v in long_files.items()], tarfile.GNU_FORMAT),
         long_files)
    emit("ref_npm_pax_long.tgz",
         tgz_bytes([("package/" + k, v) for k, v in long_files.items()], tarfile.PAX_FORMAT),
         long_files)

    emit("empty.zip", zip_bytes([]), {})

    unsafe = {"ok.js": b"ok();\n"}
    emit("unsafe_entries.zip",
         zip_bytes([("../evil.js", b"evil();\n", None), ("ok.js", unsafe["ok.js"], None),
                    ("C:/win.js", b"win();\n", None)]),
         unsafe)

    with open(os.path.join(OUT, "expected.json"), "w") as f:
        json.dump(expected, f, indent=2, sort_keys=True)
        f.write("\n")


if __name__ == "__main__":
    main()
