"""
Report rendering: JSON through ReportSchema, Markdown from the same dump.
"""

from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional, Union
import json
import logging

import pytz

from ..models.report import Report
from ..schemas.report_schema import ReportSchema

logger = logging.getLogger(__name__)

FORMATS = ("json", "markdown")

_MARKS = {True: "pass", False: "FAIL", None: "inconclusive"}


def stamp(report: Report, now: Optional[datetime] = None) -> Report:
    """Set generated_at to the current UTC time."""
    report.generated_at = now or datetime.now(pytz.utc)
    return report


def to_dict(report: Report) -> Dict[str, Any]:
    return ReportSchema().dump(report)


def to_json(report: Report) -> str:
    return json.dumps(to_dict(report), sort_keys=True, indent=2) + "\n"


def _power(value: Optional[Dict[str, int]]) -> str:
    if value is None:
        return "n/a"
    return f"{value['p']}^{value['exponent']}"


def _flag(value: Optional[bool]) -> str:
    return "n/a" if value is None else ("yes" if value else "no")


def to_markdown(report: Report) -> str:
    data = to_dict(report)
    lines: List[str] = [f"# {data['label']}", ""]
    lines.append(f"- command: `{data['command']}`")
    presentation = data["presentation"]
    lines.append(
        f"- p = {presentation['p']}, orders = {presentation['orders']}, "
        f"{len(presentation['commutators'])} nontrivial commutators"
    )
    if data["generated_at"]:
        lines.append(f"- generated at {data['generated_at']}")

    structure = data["structure"]
    if structure:
        lines += ["", "## Structure", ""]
        lines.append(f"- |G| = {_power(structure['order'])}")
        lines.append(f"- exp G = {structure['exponent'] if structure['exponent'] else 'n/a'}")
        lines.append(f"- purely non-abelian: {_flag(structure['purely_nonabelian'])}")
        lines += ["", "| section | invariants | rank | elementary |", "|---|---|---|---|"]
        for name, section in structure["sections"].items():
            lines.append(
                f"| {name} | {section['orders']} | {section['rank']} | "
                f"{_flag(section['elementary'])} |"
            )
        if structure["relations"]:
            lines.append("")
            for name, relation in structure["relations"].items():
                lines.append(f"- {name}: {relation}")

    criteria = data["criteria"]
    lines += ["", "## Criteria", ""]
    lines.append(f"- |Autcent(G)| = {_power(criteria['autcent_order'])}")
    ay = criteria["adney_yen"]
    if ay:
        lines.append(
            f"- R = K criterion: a={ay['a']} b={ay['b']} c={ay['c']} d={ay['d']}, "
            f"R = K {_flag(ay['r_equals_k'])}, abelian {_flag(ay['abelian'])}"
        )
    if criteria["jafari_odd"] is not None:
        lines.append(f"- Autcent elementary abelian (odd p): {_flag(criteria['jafari_odd'])}")
    if criteria["jafari_two"]:
        lines.append(f"- p = 2 conditions satisfied: {criteria['jafari_two']['satisfied']}")
    if criteria["earnley"]:
        lines.append(f"- exponent-p guard applies: {_flag(criteria['earnley']['applicable'])}")
    if criteria["dichotomy"]:
        dichotomy = criteria["dichotomy"]
        lines.append(
            f"- dichotomy: Z = Phi {_flag(dichotomy['branch1'])}, "
            f"gamma2 = Phi {_flag(dichotomy['branch2'])}, exp G = {dichotomy['exponent']}"
        )

    verdict = data["verdict"]
    if verdict:
        lines += ["", "## Verdict", "", f"**{verdict['kind']}**"]
        if verdict["reason"]:
            lines.append(f"({verdict['reason']})")
        stats = verdict["stats"]
        lines.append("")
        lines.append(
            f"- nodes {stats['nodes']}, patterns {stats['level0_patterns']}, "
            f"central prunes {stats['central_prunes']}"
        )
        if verdict["witness"]:
            lines.append(f"- witness images: {verdict['witness']['images']}")
        lines.append(f"- |Aut(G)| = {_power(data['aut_order'])}")
        lines.append(f"- Aut(G) abelian: {_flag(data['aut_abelian'])}")

    oracle = data["oracle"]
    if oracle:
        lines += ["", "## Oracle", ""]
        lines.append(f"- |Aut(G)| = {oracle['automorphisms']}, central {oracle['central']}")

    if data["checks"]:
        lines += ["", "## Checks", ""]
        lines += ["| claim | check | result | detail |", "|---|---|---|---|"]
        for check in data["checks"]:
            lines.append(
                f"| {check['claim']} | `{check['check']}` | "
                f"{_MARKS[check['passed']]} | {check['detail']} |"
            )
    lines += ["", f"exit code {data['exit_code']}"]
    return "\n".join(lines) + "\n"


def render(report: Report, fmt: str = "json") -> str:
    if fmt == "markdown":
        return to_markdown(report)
    return to_json(report)


def write_report(report: Report, path: Union[str, Path], fmt: str = "json") -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(render(report, fmt), encoding="utf-8")
    logger.info(f"Wrote {fmt} report for {report.label} to {target}")
    return target
