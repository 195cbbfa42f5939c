"""Command line shell: batch evaluation, scripted replay, and the service.

Every flag has an environment override (EGCNET_<FLAG>), e.g. --fv-db can
come from EGCNET_FV_DB. Exit codes: 0 ok, 2 input parse problems.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .egc import EgcConfig
from .emotions import DecisionTable
from .fpn import load_rules
from .learning import LearningConfig, MuSource
from .model import CaseFrame, CaseFrameError, DatabaseError, FavoriteValueDB
from .mstn import load_transition_table
from .session import EngineConfig, ScriptError, Session, run_script

PARSE_ERROR = 2


def _env_default(name: str, fallback=None):
    return os.environ.get(f"EGCNET_{name}", fallback)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="egcnet",
        description="Emotion-generating calculations with mood tracking and FV learning.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--fv-db", default=_env_default("FV_DB"),
                       help="favorite value database file (JSONL)")
        p.add_argument("--rules", default=_env_default("RULES"),
                       help="rule file overriding the packaged case-frame rules")
        p.add_argument("--transition-table", default=_env_default("TRANSITION_TABLE"),
                       help="7x7 transition probability file")
        p.add_argument("--eta", type=float, default=float(_env_default("ETA", 1.0)),
                       help="learning rate in (0, 1]")
        p.add_argument("--lambda", dest="lam", type=float,
                       default=float(_env_default("LAMBDA", 0.1)),
                       help="base firing threshold")
        p.add_argument("--mu-source", choices=["fixed", "mstn"],
                       default=_env_default("MU_SOURCE", "fixed"),
                       help="certainty factor source for learning")
        p.add_argument("--decision-table", default=_env_default("DECISION_TABLE"),
                       help="emotion decision table file (JSON)")
        p.add_argument("--persona", default=_env_default("PERSONA"),
                       help="persona id for FV lookups")

    p_eval = sub.add_parser("eval", help="evaluate case-frame events from a file")
    common(p_eval)
    p_eval.add_argument("script", help="JSONL file, one case-frame event per line")

    p_replay = sub.add_parser("replay", help="run a scripted session with feedback")
    common(p_replay)
    p_replay.add_argument("script", help="JSONL session script (trace files work too)")
    p_replay.add_argument("--trace-out", default=_env_default("TRACE_OUT"),
                          help="where to write the session trace")
    p_replay.add_argument("--db-out", default=_env_default("DB_OUT"),
                          help="where to write the final FV database")

    p_serve = sub.add_parser("serve", help="run the HTTP session service")
    common(p_serve)
    p_serve.add_argument("--host", default=_env_default("HOST", "127.0.0.1"))
    p_serve.add_argument("--port", type=int, default=int(_env_default("PORT", 8000)))

    return parser


def _load_db(path: str | None) -> FavoriteValueDB:
    if not path:
        return FavoriteValueDB()
    return FavoriteValueDB.load(path)


def build_config(args: argparse.Namespace) -> EngineConfig:
    learning = LearningConfig(
        eta=args.eta,
        mu_source=MuSource.MSTN_DERIVED if args.mu_source == "mstn" else MuSource.FIXED_TABLE,
        base_lambda=args.lam)
    return EngineConfig(
        persona=args.persona or "default",
        learning=learning,
        egc=EgcConfig(),
        transition_probs=load_transition_table(args.transition_table) if args.transition_table else None,
        decision_table=DecisionTable.load(args.decision_table) if args.decision_table else None,
        rule_base=load_rules(args.rules) if args.rules else None,
    )


def cmd_eval(args: argparse.Namespace) -> int:
    db = _load_db(args.fv_db)
    config = build_config(args)
    try:
        lines = Path(args.script).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return PARSE_ERROR
    session = Session(db, config)
    for lineno, raw in enumerate(lines, start=1):
        text = raw.strip()
        if not text or text.startswith("#"):
            continue
        try:
            payload = json.loads(text)
            event = payload.get("event", payload) if isinstance(payload, dict) else payload
            cf = CaseFrame.from_dict(event)  # bare frames allowed
            record = session.submit_event(cf, dry_run=True)
        except (json.JSONDecodeError, CaseFrameError, ValueError) as exc:
            print(f"error: line {lineno}: {exc}", file=sys.stderr)
            return PARSE_ERROR
        egc = record.egc
        vectors = " ".join(
            "({:+.3f},{:+.3f},{:+.3f})".format(*vec) for vec in egc["vectors"])
        octants = ",".join(egc["octants"])
        print(f"{cf.event_type} vectors={vectors} octant={octants} "
              f"signed={egc['signed_value']:+.6f}")
    return 0


def cmd_replay(args: argparse.Namespace) -> int:
    try:
        db = _load_db(args.fv_db)
    except DatabaseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return PARSE_ERROR
    config = build_config(args)
    try:
        lines = Path(args.script).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return PARSE_ERROR
    session = Session(db, config)
    try:
        run_script(session, lines)
    except ScriptError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return PARSE_ERROR
    if args.trace_out:
        Path(args.trace_out).write_text(session.trace_text(), encoding="utf-8")
    else:
        sys.stdout.write(session.trace_text())
    if args.db_out:
        session.db.save(args.db_out)
    view = session.state_view()
    print(f"replayed {view['turns']} turns; final mood {view['mood']}", file=sys.stderr)
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    db = _load_db(args.fv_db)
    app = create_app(db, build_config(args))
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "eval":
            return cmd_eval(args)
        if args.command == "replay":
            return cmd_replay(args)
        if args.command == "serve":
            return cmd_serve(args)
    except (DatabaseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return PARSE_ERROR
    raise AssertionError(f"unhandled command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
