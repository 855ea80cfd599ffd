"""Solve the secondary-cone LP for tau(P) and save the certificate.

    python scripts/projectivity_certificate.py [certificate.json]

The file has {"heights": {"point-index": "p/q"}, "slack": "p/q"}; the
triangulation itself goes next to it as triangulation.json.  Re-running with
--check re-verifies a saved certificate without solving the LP.
"""
import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from cubicmirror import regularity as rg, triangulation as tr


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("path", nargs="?", default="certificate.json")
    ap.add_argument("--check", action="store_true", help="verify an existing certificate")
    args = ap.parse_args()
    path = Path(args.path)
    T = tr.build_tau_P()
    if args.check:
        data = json.loads(path.read_text())
        cert = rg.SecondaryCertificate({int(k): Fraction(v) for k, v in data["heights"].items()},
                                       Fraction(data["slack"]))
    else:
        t0 = time.perf_counter()
        cert = rg.check_projective(T)
        print(f"LP solved in {time.perf_counter() - t0:.1f}s")
        if not isinstance(cert, rg.SecondaryCertificate):
            print("tau(P) is not regular:", json.dumps(cert.to_json())[:400])
            return 1
        path.write_text(rg.dumps(cert) + "\n")
        path.with_name("triangulation.json").write_text(tr.dumps(T) + "\n")
    ok = rg.verify_certificate(T, cert)
    print(f"slack {cert.slack}, {len(cert.heights)} heights, re-verified: {ok}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
