"""Command-line commands: argv to a Command model, Command to a CommandResult.

Every grammar argument of a command is parsed before anything executes, so a
parse error never leaves a command half run.
"""
import argparse
from enum import Enum
from typing import Any, Dict, List, NoReturn, Optional, Sequence, Union

from loguru import logger
from pydantic import BaseModel, Field

from ..config import get_settings
from ..exceptions import UsageError
from ..models import ExitStatus, worst_status
from ..nomset import act
from ..services.counterexamples import CounterexampleBuilder, get_counterexample_builder
from ..services.suites import SuiteRunner
from ..services.support_calculus import SupportCalculus, get_support_calculus
from ..syntax import (
    parse_atom,
    parse_atom_set,
    parse_perm,
    parse_prop,
    parse_seq_spec,
    parse_value,
)

SYNOPSIS = """\
usage: nomsupport [-h] <command> ...

  act <perm> <value>                    apply a permutation to a value
  support <value> <set> [budget]        is the atom set a support of the value?
  least <value> [budget]                least finite support of the value
  demo wlpo --spec <spec> [--spec ...]  least supports of alpha_a per sequence spec
  demo abar --phi <prop> [--atom a0]    equivariance and least support of a-bar
  demo family --phi <prop> [--atom a0]  the family of finite supports of a-bar
  demo s1s2 --psi <prop> [--atom a0]    two subfinite supports with empty intersection
  demo intersection <value> <set> <set> intersection of two verified supports
  suite <name>                          seeded property suite, or 'all'

options: --budget <n>  --json  --out <path>
exit status: 0 verified, 2 refuted, 3 undecided, 64 usage error"""

GRAMMARS = """\
grammars:
  perm   ()  |  (a0 a1)(a1 a2 a3) ...        cycles apply left to right
  value  atom a0 | unit | nat 3 | inl <v> | inr <v> | pair <v> <v>
         | seq {3:a0, 5:*} star | seq {} oracle(<name>, a0)
         | abar a0 <prop> | sub a0 <prop>  | ( <v> )
  prop   true | false | allzero(<name>) | oracle:<name> | not <prop>
         | (<prop> and <prop>) | (<prop> or <prop>)
  set    {a0, a2}  |  {}
  spec   zeros | one@{2,7} | oracle:<name>
oracles: late-one, collatz-flag, goldbach-flag"""

DEMOS = ["wlpo", "abar", "family", "s1s2", "intersection"]
SUITES = [
    "group-laws",
    "decomposition",
    "intersection",
    "least-support",
    "nocc",
    "lset",
    "nointer",
    "monotonicity",
    "roundtrip",
    "all",
]


class CommandKind(str, Enum):
    ACT = "act"
    SUPPORT = "support"
    LEAST = "least"
    DEMO = "demo"
    SUITE = "suite"


class CommandBase(BaseModel):
    json_output: bool = False
    out: Optional[str] = None


class ActCommand(CommandBase):
    kind: CommandKind = CommandKind.ACT
    perm: str
    value: str


class SupportCommand(CommandBase):
    kind: CommandKind = CommandKind.SUPPORT
    value: str
    atoms: str
    budget: Optional[int] = Field(default=None, ge=0)


class LeastCommand(CommandBase):
    kind: CommandKind = CommandKind.LEAST
    value: str
    budget: Optional[int] = Field(default=None, ge=0)


class DemoCommand(CommandBase):
    kind: CommandKind = CommandKind.DEMO
    name: str
    args: List[str] = Field(default_factory=list)
    specs: List[str] = Field(default_factory=list)
    phi: Optional[str] = None
    psi: Optional[str] = None
    atom: str = "a0"
    budget: Optional[int] = Field(default=None, ge=0)


class SuiteCommand(CommandBase):
    kind: CommandKind = CommandKind.SUITE
    name: str
    seed: Optional[int] = None


Command = Union[ActCommand, SupportCommand, LeastCommand, DemoCommand, SuiteCommand]


class CommandResult(BaseModel):
    status: ExitStatus
    text: str
    record: Dict[str, Any] = Field(default_factory=dict)


class UsageErrorParser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting on bad arguments"""

    def error(self, message: str) -> NoReturn:
        raise UsageError(message)


def _budget(value: str) -> int:
    try:
        budget = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"budget must be a natural number: {value!r}")
    if budget < 0:
        raise argparse.ArgumentTypeError(f"budget must be a natural number: {budget}")
    return budget


def build_parser() -> UsageErrorParser:
    common = UsageErrorParser(add_help=False)
    common.add_argument(
        "--budget", dest="budget_flag", type=_budget, help="oracle query budget"
    )
    common.add_argument(
        "--json", dest="json_output", action="store_true", help="print JSON"
    )
    common.add_argument("--out", help="also write the report to this path")

    parser = UsageErrorParser(
        prog="nomsupport",
        description="Support calculus for nominal sets with budgeted oracles.",
        epilog=GRAMMARS,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    commands = parser.add_subparsers(
        dest="command", metavar="<command>", parser_class=UsageErrorParser
    )

    act_parser = commands.add_parser("act", parents=[common], help="apply a permutation")
    act_parser.add_argument("perm")
    act_parser.add_argument("value")

    support = commands.add_parser("support", parents=[common], help="check a support")
    support.add_argument("value")
    support.add_argument("atoms", metavar="set")
    support.add_argument("budget", nargs="?", type=_budget)

    least = commands.add_parser("least", parents=[common], help="least finite support")
    least.add_argument("value")
    least.add_argument("budget", nargs="?", type=_budget)

    demo = commands.add_parser("demo", parents=[common], help="counterexample demos")
    demo.add_argument("name", choices=DEMOS)
    demo.add_argument("args", nargs="*")
    demo.add_argument("--spec", dest="specs", action="append", default=[])
    demo.add_argument("--phi")
    demo.add_argument("--psi")
    demo.add_argument("--atom", default="a0")

    suite = commands.add_parser("suite", parents=[common], help="property suites")
    suite.add_argument("name", choices=SUITES)
    suite.add_argument("--seed", type=int)
    return parser


def parse_command(argv: Sequence[str]) -> Command:
    args = build_parser().parse_args(list(argv))
    if args.command is None:
        raise UsageError("a command is required")
    options = {"json_output": args.json_output, "out": args.out}
    budget = getattr(args, "budget", None)
    if budget is None:
        budget = args.budget_flag

    if args.command == "act":
        return ActCommand(perm=args.perm, value=args.value, **options)
    if args.command == "support":
        return SupportCommand(value=args.value, atoms=args.atoms, budget=budget, **options)
    if args.command == "least":
        return LeastCommand(value=args.value, budget=budget, **options)
    if args.command == "demo":
        return DemoCommand(
            name=args.name,
            args=args.args,
            specs=args.specs,
            phi=args.phi,
            psi=args.psi,
            atom=args.atom,
            budget=budget,
            **options,
        )
    return SuiteCommand(name=args.name, seed=args.seed, **options)


# Dependency to get the support calculus
def get_calculus() -> SupportCalculus:
    return get_support_calculus()


# Dependency to get the counterexample builder
def get_builder() -> CounterexampleBuilder:
    return get_counterexample_builder()


# Dependency to get a suite runner
def get_suite_runner(seed: Optional[int] = None) -> SuiteRunner:
    return SuiteRunner(seed=seed, builder=get_builder())


def _default_budget(budget: Optional[int]) -> int:
    return get_settings().default_budget if budget is None else budget


def _run_act(command: ActCommand) -> CommandResult:
    pi = parse_perm(command.perm)
    v = parse_value(command.value)
    result = act(pi, v)
    record = {"command": "act", "perm": str(pi), "value": str(v), "result": str(result)}
    return CommandResult(status=ExitStatus.OK, text=str(result), record=record)


def _run_support(command: SupportCommand) -> CommandResult:
    v = parse_value(command.value)
    atoms = parse_atom_set(command.atoms)
    report = get_calculus().is_support(v, atoms, _default_budget(command.budget))
    lines = [report.summary()] + [f"note: {note}" for note in report.notes]
    record = {"command": "support", "value": str(v), "summary": report.summary()}
    record.update(report.record())
    return CommandResult(status=report.exit_status, text="\n".join(lines), record=record)


def _run_least(command: LeastCommand) -> CommandResult:
    v = parse_value(command.value)
    least = get_calculus().least_support(v, _default_budget(command.budget))
    record = {"command": "least", "value": str(v), "summary": least.summary()}
    record.update(least.record())
    return CommandResult(status=least.exit_status, text=least.summary(), record=record)


def _require(value: Optional[str], flag: str, demo: str) -> str:
    if value is None:
        raise UsageError(f"demo {demo} needs {flag}")
    return value


def _run_demo(command: DemoCommand) -> CommandResult:
    builder = get_builder()
    budget = _default_budget(command.budget)
    a = parse_atom(command.atom)
    if command.name != "intersection" and command.args:
        raise UsageError(f"demo {command.name} takes no positional arguments")

    if command.name == "wlpo":
        if not command.specs:
            raise UsageError("demo wlpo needs at least one --spec")
        specs = [parse_seq_spec(text) for text in command.specs]
        demo = builder.wlpo_demo(specs, a, budget)
    elif command.name == "abar":
        phi = parse_prop(_require(command.phi, "--phi", "abar"))
        demo = builder.abar_demo(phi, a, budget)
    elif command.name == "family":
        phi = parse_prop(_require(command.phi, "--phi", "family"))
        demo = builder.make_support_family(phi, a, budget).demo
    elif command.name == "s1s2":
        psi = parse_prop(_require(command.psi, "--psi", "s1s2"))
        demo = builder.make_s1_s2(psi, a, budget)[2]
    else:
        if len(command.args) != 3:
            raise UsageError("demo intersection needs <value> <set> <set>")
        v = parse_value(command.args[0])
        first, second = (parse_atom_set(text) for text in command.args[1:])
        demo = builder.intersection_demo(v, first, second, budget)

    lines = [demo.construction, f"element: {demo.element}"]
    for claim in demo.claims:
        detail = f": {claim.detail}" if claim.detail else ""
        lines.append(f"  [{claim.outcome.value}] {claim.statement}{detail}")
    lines.append(demo.narrative)
    status = demo.exit_status
    record = {"command": "demo", "name": command.name, "status": int(status)}
    record.update(demo.record())
    return CommandResult(status=status, text="\n".join(lines), record=record)


def _run_suite(command: SuiteCommand) -> CommandResult:
    results = get_suite_runner(command.seed).run(command.name)
    lines = []
    for result in results:
        line = (
            f"{result.name}: {result.cases} cases, "
            f"{result.failures} failures ({result.seconds}s)"
        )
        if result.first_failure:
            line += f"\n  first failure: {result.first_failure}"
        lines.append(line)
    status = worst_status([result.exit_status for result in results])
    record = {
        "command": "suite",
        "status": int(status),
        "suites": [result.model_dump(mode="json") for result in results],
    }
    return CommandResult(status=status, text="\n".join(lines), record=record)


def run(command: Command) -> CommandResult:
    logger.info(f"Running {command.kind.value} command")
    if isinstance(command, ActCommand):
        return _run_act(command)
    if isinstance(command, SupportCommand):
        return _run_support(command)
    if isinstance(command, LeastCommand):
        return _run_least(command)
    if isinstance(command, DemoCommand):
        return _run_demo(command)
    return _run_suite(command)
