"""Command-line front end: ``koszul-tangent <command> scene.json [...]``.

Every command prints one result document whose keys are always, in order,
command, scene, class, case, boundary, corrector, verdict, warnings.  Exit
codes: 0 when a verdict was computed (including negative ones), 1 for bad
input, 2 for valid input outside the handled construction, 3 when
``--oracle`` catches a disagreement.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .chern import fundamental_class
from .cousin import sum_boundaries
from .errors import GroebnerLimitError, KoszulError, OracleMismatchError, UnsupportedCaseError
from .groebner import RegularityWarning
from .koszul import build_koszul
from .localcoh import class_is_zero
from .scene import load_scene, scene_to_dict
from .tangent import classify_case, correct, milnor_certificate, pi, pi_sum, split_scene

EXIT_OK, EXIT_INPUT, EXIT_UNSUPPORTED, EXIT_ORACLE = 0, 1, 2, 3
COMMANDS = ("pi", "boundary", "classify", "correct", "verify", "koszul")
KEYS = ("command", "scene", "class", "case", "boundary", "corrector", "verdict", "warnings")

EXT_CAVEAT = (
    "vanishing is decided at the Ext level: numerator coefficients are tested for "
    "membership in the denominator ideal"
)


def _point_note(scene) -> str:
    gens = ", ".join(str(x) for x in scene.f + (scene.extension,))
    return f"TZ^p verdict qualified: tested only at {scene.labels['w']} = ({gens})"


def render_class(c):
    return {
        "point": c.point,
        "numerator": str(c.numerator),
        "denominators": [str(f) for f in c.denominators],
        "text": str(c),
    }


def _render_part(part):
    return {
        "input": render_class(part.input),
        "extension": str(part.extension),
        "case_tag": part.case_tag,
        "decomposition": part.decomposition.as_dict() if part.decomposition else None,
        "unit_factor": None if part.unit_factor is None else str(part.unit_factor),
        "output": render_class(part.output),
    }


def render_sum(cert):
    return {
        "class": render_class(cert.output),
        "is_zero": class_is_zero(cert.output),
        "parts": [_render_part(p) for p in cert.parts],
        "signs": list(cert.signs),
    }


def new_document(command, scene_doc):
    doc = dict.fromkeys(KEYS)
    doc["command"] = command
    doc["scene"] = scene_doc
    doc["warnings"] = []
    return doc


def _cmd_pi(scene, doc, method):
    c = pi_sum(scene, method)
    doc["class"] = render_class(c)
    doc["verdict"] = "zero class" if not c.numerator else "class computed"


def _cmd_boundary(scene, doc, method):
    pairs = [(pi(part, method), part.extension) for part in split_scene(scene)]
    doc["class"] = render_class(pi_sum(scene, method))
    cert = sum_boundaries(pairs, scene.labels["w"])
    doc["boundary"] = render_sum(cert)
    zero = doc["boundary"]["is_zero"]
    doc["verdict"] = f"boundary {'vanishes' if zero else 'is nonzero'} at {scene.labels['w']}"
    doc["warnings"] += [EXT_CAVEAT, _point_note(scene)]


def _cmd_classify(scene, doc, method):
    v = classify_case(scene)
    doc["case"] = v.case
    doc["boundary"] = {
        "b": str(v.b),
        "decomposition": v.decomposition.as_dict() if v.decomposition else None,
    }
    doc["verdict"] = f"case {v.case}"


def _cmd_correct(scene, doc, method):
    r = correct(scene, method)
    doc["class"] = render_class(r.classes[0])
    doc["case"] = r.case
    doc["boundary"] = render_sum(r.certificate)
    if r.case == 2:
        z = r.corrector_scene
        doc["corrector"] = {
            "Z_sequence": [str(x) for x in r.Z_sequence],
            "lifted": [str(h) for h in z.lifted_sequence()],
            "perturbation": [str(x) for x in r.Zprime_perturbation],
            "extension": str(z.extension),
            "scene": scene_to_dict(z),
            "class": render_class(r.classes[1]),
            "antisymmetric": r.antisymmetric,
        }
    else:
        doc["corrector"] = {"trivial": True}
    w = scene.labels["w"]
    if r.milnor_member:
        doc["verdict"] = f"sum boundary vanishes at {w}"
    else:
        doc["verdict"] = f"sum boundary does not vanish at {w}"
    doc["warnings"] += [EXT_CAVEAT, _point_note(scene)]


def _cmd_koszul(scene, doc, method):
    k = build_koszul(scene.lifted_sequence())
    fc = fundamental_class(k, method)
    doc["class"] = {
        "complex": k.render(),
        "composite_is_zero": k.composite_is_zero(),
        "fundamental_class": str(fc.form),
    }
    doc["verdict"] = "complex built"


_HANDLERS = {
    "pi": _cmd_pi,
    "boundary": _cmd_boundary,
    "classify": _cmd_classify,
    "correct": _cmd_correct,
    "koszul": _cmd_koszul,
}


def _guarded(command, scene_doc, body):
    """Run ``body(doc)`` and map exceptions to exit codes; returns (doc, code)."""
    doc = new_document(command, scene_doc)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", RegularityWarning)
        try:
            body(doc)
            code = EXIT_OK
        except UnsupportedCaseError as exc:
            doc["verdict"] = f"unsupported: {exc}"
            if exc.decomposition is not None:
                doc["boundary"] = {"decomposition": exc.decomposition.as_dict()}
            code = EXIT_UNSUPPORTED
        except GroebnerLimitError as exc:
            doc["verdict"] = f"unsupported: {exc}"
            code = EXIT_UNSUPPORTED
        except OracleMismatchError as exc:
            doc["verdict"] = f"oracle mismatch: {exc}"
            code = EXIT_ORACLE
        except (KoszulError, ValueError) as exc:
            doc["verdict"] = f"input error: {exc}"
            code = EXIT_INPUT
    for w in caught:
        doc["warnings"].append(str(w.message))
    return doc, code


def run(command, paths, oracle=False):
    """Evaluate ``command`` on the scene file(s) at ``paths``; returns (document, exit code)."""
    method = "oracle" if oracle else "closed"
    paths = [paths] if isinstance(paths, (str, os.PathLike)) else list(paths)
    if command not in COMMANDS:
        doc = new_document(command, None)
        doc["verdict"] = f"input error: unknown command {command!r}"
        return doc, EXIT_INPUT
    if command != "verify" and len(paths) != 1:
        doc = new_document(command, None)
        doc["verdict"] = f"input error: {command} takes exactly one scene file"
        return doc, EXIT_INPUT
    scenes = []
    try:
        for path in paths:
            scenes.append(load_scene(path))
    except GroebnerLimitError as exc:
        doc = new_document(command, None)
        doc["verdict"] = f"unsupported: {exc}"
        return doc, EXIT_UNSUPPORTED
    except (KoszulError, ValueError) as exc:
        doc = new_document(command, None)
        doc["verdict"] = f"input error: {exc}"
        return doc, EXIT_INPUT

    if command == "verify":
        scene_doc = [scene_to_dict(s) for s in scenes]

        def body(doc):
            cert = milnor_certificate(scenes, method)
            doc["boundary"] = render_sum(cert)
            w = scenes[0].labels["w"]
            ok = doc["boundary"]["is_zero"]
            doc["verdict"] = f"Milnor cycle at {w}" if ok else f"not a Milnor cycle at {w}"
            for s in scenes:
                doc["warnings"].extend(s.advisories())
            doc["warnings"] += [EXT_CAVEAT, _point_note(scenes[0])]
    else:
        scene = scenes[0]
        scene_doc = scene_to_dict(scene)

        def body(doc):
            doc["warnings"].extend(scene.advisories())
            _HANDLERS[command](scene, doc, method)

    return _guarded(command, scene_doc, body)


# -- output -----------------------------------------------------------------


def format_pretty(doc) -> str:
    lines = [f"command: {doc['command']}"]
    c = doc["class"]
    if c and "text" in c:
        lines.append(f"class:    {c['text']}")
    elif c and "complex" in c:
        lines.append(c["complex"])
        lines.append(f"A_i A_(i+1) = 0: {c['composite_is_zero']}")
        lines.append(f"fundamental class: {c['fundamental_class']}")
    if doc["case"] is not None:
        lines.append(f"case:     {doc['case']}")
    b = doc["boundary"]
    if b:
        for part in b.get("parts", []):
            lines.append(f"  part [{part['case_tag']}]: {part['output']['text']}")
        if "class" in b:
            lines.append(f"boundary: {b['class']['text']}")
        if b.get("decomposition"):
            dec = b["decomposition"]
            terms = " + ".join(
                f"({q})*({g})" for q, g in zip(dec["cofactors"], dec["generators"]) if q != "0"
            )
            lines.append(f"decomposition: {dec['b']} = {terms}")
    z = doc["corrector"]
    if z and not z.get("trivial"):
        lines.append(f"corrector Z': ({', '.join(z['lifted'])})  extension {z['extension']}")
        lines.append(f"pi(Z'):   {z['class']['text']}")
        lines.append(f"boundary(pi(Z')) = -boundary(pi(Y')): {z['antisymmetric']}")
    elif z:
        lines.append("corrector: trivial")
    lines.append(f"verdict:  {doc['verdict']}")
    for w in doc["warnings"]:
        lines.append(f"warning:  {w}")
    return "\n".join(lines)


def emit(doc, mode, out=None):
    out = out or sys.stdout
    if mode == "pretty":
        text = format_pretty(doc)
    elif mode == "json":
        text = json.dumps(doc, ensure_ascii=False, separators=(",", ":"))
    else:
        text = json.dumps(doc, ensure_ascii=False, indent=2)
    out.write(text + "\n")


def _batch_one(args):
    command, path, oracle = args
    doc, code = run(command, path, oracle)
    return path, doc, code


def run_batch(command, directory, oracle=False, workers=None):
    """Evaluate every ``*.json`` scene in ``directory`` in parallel; results in file-name order."""
    files = sorted(str(p) for p in Path(directory).glob("*.json"))
    jobs = [(command, f, oracle) for f in files]
    if len(jobs) <= 1:
        return [_batch_one(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_batch_one, jobs))


def build_parser():
    parser = argparse.ArgumentParser(
        prog="koszul-tangent",
        description="Tangent-to-cycle computations for deformations given by regular sequences.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("scenes", nargs="*", metavar="scene.json")
    parser.add_argument(
        "--oracle", action="store_true",
        help="use the matrix-composite fundamental class and cross-check the closed form",
    )
    form = parser.add_mutually_exclusive_group()
    form.add_argument("--json", dest="mode", action="store_const", const="json",
                      help="compact single-line JSON")
    form.add_argument("--pretty", dest="mode", action="store_const", const="pretty",
                      help="human-readable text")
    parser.add_argument("--batch", metavar="DIR", help="run the command on every *.json in DIR")
    parser.add_argument("--workers", type=int, default=None, help="batch worker processes")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    mode = args.mode or "indent"
    if args.batch:
        if args.scenes:
            parser.error("--batch takes no scene arguments")
        if not Path(args.batch).is_dir():
            print(f"error: {args.batch} is not a directory", file=sys.stderr)
            return EXIT_INPUT
        worst = EXIT_OK
        for path, doc, code in run_batch(args.command, args.batch, args.oracle, args.workers):
            if mode == "pretty":
                print(f"== {path} (exit {code})")
                emit(doc, mode)
            else:
                emit({"file": path, "exit": code, "result": doc}, mode)
            worst = max(worst, code)
        return worst
    if not args.scenes:
        parser.error("a scene file is required")
    doc, code = run(args.command, args.scenes, args.oracle)
    emit(doc, mode)
    if code == EXIT_INPUT:
        print(f"error: {doc['verdict']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
