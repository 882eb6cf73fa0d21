"""Generate Markdown summaries for training runs and architecture comparisons."""

from __future__ import annotations

from typing import Any, Dict, Optional, Sequence, Tuple

from jinja2 import Environment, StrictUndefined

_RUN_TEMPLATE = """\
# Run Summary: {{ s.algorithm }} on {{ s.architecture }}

{{ s.episodes }} training episodes, {{ s.eval_episodes }} evaluation episodes without exploration.

| | Reward | Success Rate | Energy / user-step | Latency |
| --- | ---: | ---: | ---: | ---: |
| Last {{ s.trailing_episodes }} episodes | {{ s.trailing.reward | reward }} \
| {{ s.trailing.success_rate | percentage }} | {{ s.trailing.mean_energy_j | energy }} \
| {{ s.trailing.mean_latency_s | latency }} |
| Evaluation | {{ s.evaluation.reward | reward }} | {{ s.evaluation.success_rate | percentage }} \
| {{ s.evaluation.mean_energy_j | energy }} | {{ s.evaluation.mean_latency_s | latency }} |
{% if s.best_reward is not none %}
Best single-episode reward: {{ s.best_reward | reward }}.
{% endif %}"""

_COMPARISON_TEMPLATE = """\
# {{ title }}

| Algorithm | Architecture | Reward (last {{ window }}) | Success (last {{ window }}) \
| Eval Reward | Eval Success | Eval Energy / user-step | Eval Latency |
| --- | --- | ---: | ---: | ---: | ---: | ---: | ---: |
{% for s in summaries -%}
| {{ s.algorithm }} | {{ s.architecture }} | {{ s.trailing.reward | reward }} \
| {{ s.trailing.success_rate | percentage }} | {{ s.evaluation.reward | reward }} \
| {{ s.evaluation.success_rate | percentage }} | {{ s.evaluation.mean_energy_j | energy }} \
| {{ s.evaluation.mean_latency_s | latency }} |
{% endfor %}"""

_SWEEP_TEMPLATE = """\
# Desk-Scale Sweep

Seeds {{ seeds | join(", ") }}; evaluation without exploration after training.

| Seed | Algorithm | Architecture | Eval Reward | Eval Success |
| ---: | --- | --- | ---: | ---: |
{% for row in rows -%}
| {{ row.seed }} | {{ row.algorithm }} | {{ row.architecture }} | {{ row.eval_reward | reward }} \
| {{ row.eval_success | percentage }} |
{% endfor %}
## Checks

{% for label, passed in checks -%}
- [{{ "PASS" if passed else "FAIL" }}] {{ label }}
{% endfor %}"""


def render_run_summary(summary: Dict[str, Any]) -> str:
    """Return a Markdown document for one run's summary."""
    return _environment().from_string(_RUN_TEMPLATE).render(s=summary).strip() + "\n"


def render_comparison(summaries: Sequence[Dict[str, Any]], *, title: str = "Architecture Comparison") -> str:
    """Return a Markdown table with one row per (algorithm, architecture) run."""
    window = summaries[0]["trailing_episodes"] if summaries else 0
    template = _environment().from_string(_COMPARISON_TEMPLATE)
    return template.render(summaries=summaries, title=title, window=window).strip() + "\n"


def render_sweep(rows: Sequence[Dict[str, Any]], checks: Sequence[Tuple[str, bool]]) -> str:
    """Return the per-seed sweep table followed by the pass/fail checks."""
    seeds = sorted({int(row["seed"]) for row in rows})
    template = _environment().from_string(_SWEEP_TEMPLATE)
    return template.render(rows=rows, checks=checks, seeds=seeds).strip() + "\n"


def _environment() -> Environment:
    env = Environment(undefined=StrictUndefined, keep_trailing_newline=True)
    env.filters["reward"] = _format_reward
    env.filters["percentage"] = _format_percentage
    env.filters["energy"] = _format_energy
    env.filters["latency"] = _format_latency
    return env


def _format_reward(value: Optional[float]) -> str:
    if value is None:
        return "—"
    return f"{value:.2f}"


def _format_percentage(value: Optional[float]) -> str:
    if value is None:
        return "—"
    return f"{value * 100:.1f}%"


def _format_energy(value: Optional[float]) -> str:
    if value is None:
        return "—"
    return f"{value * 1e3:.4f} mJ"


def _format_latency(value: Optional[float]) -> str:
    if value is None:
        return "—"
    return f"{value * 1e3:.3f} ms"
