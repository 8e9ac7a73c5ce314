import argparse
import logging
import sys
from pathlib import Path

from app import __app_name__, __version__
from app.config import Config
from app.core.errors import (ConfigError, GroupTableError, ReportWriteError, ResourceCapError,
                             SubgroupError, WindowError)

logger = logging.getLogger("app")

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_CONFIG_ERROR = 2
EXIT_RESOURCE_CAP = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qdv", description=__app_name__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", help="verify one (G, H, window) instance")
    verify.add_argument("--group", required=True, help="Z4, D4, S3, Q8 or file:<path>")
    verify.add_argument("--subgroup", default="all",
                        help="all, trivial, center or comma-separated generators")
    verify.add_argument("--window", default="0,1", help="observable window n,m")
    verify.add_argument("--suites", default="all", help="comma-separated suites or 'all'")
    verify.add_argument("--mode", default="auto", help="auto, exhaustive or sampled:<seed>")
    verify.add_argument("--format", default=None, help="json, markdown or docx")
    verify.add_argument("--out", default=None, help="report path (stdout when omitted)")
    verify.add_argument("--timings", action="store_true", help="include suite timings")
    verify.add_argument("--progress", action="store_true", help="progress bar on stderr")

    ingest = commands.add_parser("ingest-group", help="check and summarise a Cayley-table file")
    ingest.add_argument("file")

    matrix = commands.add_parser("verify-matrix", help="run suites over the instance matrix")
    matrix.add_argument("--suites", default="all")
    matrix.add_argument("--mode", default="auto")
    matrix.add_argument("--format", default=None)
    matrix.add_argument("--out-dir", default=None, help="write one report per instance here")
    matrix.add_argument("--progress", action="store_true")
    return parser


def _suite_list(text: str):
    from app.core.suites import SUITES
    if text.strip().lower() == "all":
        return list(SUITES)
    return text


def _run_config(args, settings, **overrides):
    from app.core.suites import RunConfig
    values = dict(
        group=args.group, subgroup=args.subgroup, window=args.window,
        suites=_suite_list(args.suites), mode=args.mode,
        format=args.format or settings.default_format, output=getattr(args, "out", None),
        samples=settings.sample_count, seed=settings.seed,
        exhaustive_limit=settings.exhaustive_limit, max_group_order=settings.max_group_order,
        max_basis=settings.max_basis, max_carrier=settings.max_carrier,
        timings=getattr(args, "timings", False), progress=args.progress,
    )
    values.update(overrides)
    return RunConfig.create(**values)


def command_verify(args, settings) -> int:
    from app.core.suites import run_suite
    from app.core.template_manager import emit_report

    cfg = _run_config(args, settings)
    if cfg.format == "docx" and not cfg.output:
        raise ConfigError("The docx format needs --out")
    report = run_suite(cfg)
    if cfg.output:
        emit_report(report, cfg.format, cfg.output)
    else:
        sys.stdout.write(emit_report(report, cfg.format).decode("utf-8"))
    return EXIT_OK if report.overall else EXIT_VERIFICATION_FAILED


def command_ingest(args, settings) -> int:
    from app.core.groups import all_subgroups, load_group_file

    G = load_group_file(args.file)
    names = " ".join(G.name(g) for g in G.elements)
    normal = [H for H in all_subgroups(G) if H.normal]
    print(f"Group {G.label}: order {G.order}, identity {G.name(G.identity)}")
    print(f"Elements: {names}")
    print(f"Abelian: {'yes' if G.is_abelian() else 'no'}")
    print(f"Normal subgroups ({len(normal)}):")
    for H in normal:
        print(f"  order {H.order}: {H.label}")
    return EXIT_OK


def command_matrix(args, settings, config: Config) -> int:
    from app.core.suites import SUITES, run_suite
    from app.core.template_manager import emit_report, get_template_manager
    from app.utils.paths import default_report_name

    fmt = args.format or settings.default_format
    requested = _suite_list(args.suites)
    if isinstance(requested, str):
        requested = [s.strip() for s in requested.split(",") if s.strip()]
    positive = [s for s in SUITES if s in requested and s != "negative"]
    all_ok = True
    for instance in config.instances():
        chosen = ["negative"] if instance.negative else positive
        args.group, args.subgroup = instance.group, instance.subgroup
        args.window = f"{instance.window[0]},{instance.window[1]}"
        cfg = _run_config(args, settings, suites=chosen, format=fmt, output=None, timings=False)
        try:
            report = run_suite(cfg)
        except ResourceCapError as e:
            logger.warning("Skipping %s/%s: %s", instance.group, instance.subgroup, e)
            print(f"SKIP {instance.group:>4} {instance.subgroup:<8} {e}")
            continue
        all_ok = all_ok and report.overall
        print(f"{'PASS' if report.overall else 'FAIL'} {instance.group:>4} "
              f"{instance.subgroup:<8} {', '.join(cfg.suites)}")
        if args.out_dir:
            extension = get_template_manager().get_template(fmt).file_extension
            name = default_report_name(instance.group, instance.subgroup, instance.window,
                                       extension)
            emit_report(report, fmt, str(Path(args.out_dir) / name))
    return EXIT_OK if all_ok else EXIT_VERIFICATION_FAILED


def main(argv=None) -> int:
    """Main entry point for the command-line tool."""
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    try:
        config = Config()
        settings = config.settings()
        if args.command == "verify":
            return command_verify(args, settings)
        if args.command == "ingest-group":
            return command_ingest(args, settings)
        return command_matrix(args, settings, config)
    except (ConfigError, GroupTableError, SubgroupError, WindowError, ReportWriteError) as e:
        logger.error("%s", e)
        return EXIT_CONFIG_ERROR
    except ResourceCapError as e:
        logger.error("Resource cap: %s", e)
        return EXIT_RESOURCE_CAP


if __name__ == "__main__":
    sys.exit(main())
