#!/usr/bin/env python3
"""Type-checks corpus sources with libclang (pip package `libclang`).

Neon sources are checked for aarch64 with the system arm_neon.h; RVV
sources (native references and replayed translations) for rv64gcv against
a generated riscv_vector.h that declares the v1.0 intrinsic types and turns
on clang's builtin intrinsic table. Nothing is compiled or run.

Exit status: 0 all clean, 1 diagnostics found, 77 libclang unavailable.
"""

import argparse
import glob
import json
import multiprocessing
import os
import sys
import tempfile

SEW_ENC = {8: 0, 16: 1, 32: 2, 64: 3}
LMUL_ENC = {"m1": 0, "m2": 1, "m4": 2, "m8": 3, "mf8": 5, "mf4": 6, "mf2": 7}
LMUL_VAL = {"mf8": 0.125, "mf4": 0.25, "mf2": 0.5, "m1": 1, "m2": 2, "m4": 4, "m8": 8}


def rvv_shim():
    lines = [
        "#pragma once",
        "#include <stddef.h>",
        "#include <stdint.h>",
        "enum __RISCV_VXRM { __RISCV_VXRM_RNU = 0, __RISCV_VXRM_RNE = 1, __RISCV_VXRM_RDN = 2, __RISCV_VXRM_ROD = 3 };",
        "enum __RISCV_FRM { __RISCV_FRM_RNE = 0, __RISCV_FRM_RTZ = 1, __RISCV_FRM_RDN = 2, __RISCV_FRM_RUP = 3, __RISCV_FRM_RMM = 4 };",
        "#pragma clang riscv intrinsic vector",
    ]
    for sew in SEW_ENC:
        for lm, enc in LMUL_ENC.items():
            if sew / LMUL_VAL[lm] > 64:
                continue
            lines.append(f"#define __riscv_vsetvl_e{sew}{lm}(avl) __builtin_rvv_vsetvli((size_t)(avl), {SEW_ENC[sew]}, {enc})")
            lines.append(f"#define __riscv_vsetvlmax_e{sew}{lm}() __builtin_rvv_vsetvlimax({SEW_ENC[sew]}, {enc})")
    kinds = [("int", [8, 16, 32, 64]), ("uint", [8, 16, 32, 64]), ("float", [16, 32, 64])]
    for kind, widths in kinds:
        for sew in widths:
            for lm in LMUL_ENC:
                if sew / LMUL_VAL[lm] > 64:
                    continue
                lines.append(f"typedef __rvv_{kind}{sew}{lm}_t v{kind}{sew}{lm}_t;")
                for fields in range(2, 9):
                    if LMUL_VAL[lm] * fields > 8:
                        continue
                    lines.append(f"typedef __rvv_{kind}{sew}{lm}x{fields}_t v{kind}{sew}{lm}x{fields}_t;")
    for n in (1, 2, 4, 8, 16, 32, 64):
        lines.append(f"typedef __rvv_bool{n}_t vbool{n}_t;")
    return "\n".join(lines) + "\n"


def resource_include():
    for pattern in ("/usr/lib/llvm-*/lib/clang/*/include",):
        for d in sorted(glob.glob(pattern), reverse=True):
            if os.path.exists(os.path.join(d, "arm_neon.h")):
                return d
    return None


def check_one(path, args):
    from clang import cindex
    tu = cindex.Index.create().parse(path, args=args)
    for d in tu.diagnostics:
        if d.severity >= 3:
            print(f"     {d.location.line}:{d.location.column}: {d.spelling}", flush=True)
    sys.exit(1 if any(d.severity >= 3 for d in tu.diagnostics) else 0)


def check(path, args):
    # libclang 18 can crash on some ill-typed vector builtin calls, so each
    # file is parsed in a child process and a crash counts as a failure.
    proc = multiprocessing.Process(target=check_one, args=(path, args))
    proc.start()
    proc.join()
    if proc.exitcode not in (0, 1):
        print(f"     libclang crashed (exit {proc.exitcode}); treating the source as ill-formed")
    return proc.exitcode == 0


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("corpus", help="corpus directory")
    ap.add_argument("--replay", action="append", default=[], help="replay file whose responses should type-check")
    opts = ap.parse_args()

    try:
        from clang import cindex
        cindex.Index.create()
    except Exception as e:  # missing package or shared library
        print(f"skip: libclang unavailable ({e})")
        return 77
    inc = resource_include()
    if inc is None:
        print("skip: no clang resource headers with arm_neon.h")
        return 77

    failures = 0
    with tempfile.TemporaryDirectory() as tmp:
        with open(os.path.join(tmp, "riscv_vector.h"), "w") as f:
            f.write(rvv_shim())
        rvv_args = ["-x", "c", "--target=riscv64-linux-gnu", "-march=rv64gcv_zvfh", "-ffreestanding",
                    "-nostdinc", "-isystem", tmp, "-isystem", inc]
        neon_args = ["-x", "c", "--target=aarch64-linux-gnu", "-ffreestanding", "-nostdinc", "-isystem", inc]

        jobs = []
        for manifest in sorted(glob.glob(os.path.join(opts.corpus, "*", "manifest.txt"))):
            case = os.path.dirname(manifest)
            jobs.append((os.path.join(case, "neon.c"), neon_args))
            jobs.append((os.path.join(case, "native_rvv.c"), rvv_args))
        for replay in opts.replay:
            with open(replay) as f:
                data = json.load(f)
            for case, entries in data["cases"].items():
                for k, e in enumerate(entries):
                    text = e if isinstance(e, str) else e["response"]
                    if "@mock compile-error" in text or "```c" not in text:
                        continue
                    code = text.rsplit("```c", 1)[1].split("```", 1)[0]
                    p = os.path.join(tmp, f"{case}-{k + 1}.c")
                    with open(p, "w") as out:
                        out.write(code)
                    jobs.append((p, rvv_args))

        for path, args in jobs:
            print(f"---- {path}", flush=True)
            ok = check(path, args)
            print("ok" if ok else "FAIL", flush=True)
            failures += not ok
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
