import logging
from pathlib import Path

import numpy as np
import typer

from ecoand.config import ConfigManager, GridSpec
from ecoand.config.settings import DEFAULT_GRID, DEFAULT_TRAJECTORY_STEP
from ecoand.exceptions import (
    EcoAndError,
    NoFeasiblePlanError,
    OracleInfeasibleError,
    ScenarioParseError,
    ScenarioValidationError,
)
from ecoand.fixtures import describe_fixture, list_fixtures, resolve_scenario
from ecoand.models.scenario import Scenario
from ecoand.models.solution import Comparison, PlanOutcome
from ecoand.services.baseline import compare as compare_scenario
from ecoand.services.baseline import human_trajectory
from ecoand.services.planner import plan as plan_scenario
from ecoand.solvers.oracle import CrosscheckReport, crosscheck, random_scenarios
from ecoand.utils.csv_utils import SWEEP_COLUMNS, TRAJECTORY_COLUMNS, format_csv, write_csv
from ecoand.utils.kinematics import trajectory_rows

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s [%(levelname)s] %(message)s",
)
logger = logging.getLogger(__name__)

EXIT_INPUT_ERROR = 1
EXIT_NO_PLAN = 2
EXIT_ORACLE_GAP = 3

app = typer.Typer(help="ECO-AND CLI - Eco-driving arrival planner for a signalized intersection")


def _set_verbosity(verbose: bool) -> None:
    if verbose:
        logging.getLogger().setLevel(logging.DEBUG)


def load_scenario_or_exit(source: str) -> Scenario:
    """Load a scenario file or bundled fixture, exiting with code 1 on failure."""
    try:
        return resolve_scenario(source)
    except (OSError, ScenarioParseError, ScenarioValidationError) as e:
        typer.echo(f"❌ Error loading scenario {source}: {str(e)}", err=True)
        raise typer.Exit(code=EXIT_INPUT_ERROR)


def plan_or_exit(scenario: Scenario) -> PlanOutcome:
    try:
        return plan_scenario(scenario)
    except NoFeasiblePlanError as e:
        typer.echo(f"❌ No feasible plan: {str(e)}", err=True)
        raise typer.Exit(code=EXIT_NO_PLAN)


def _format_cost(cost: float | None) -> str:
    return "infeasible" if cost is None else f"{cost:.4f}"


@app.command()
def plan(
    scenario_path: str = typer.Argument(..., help="Scenario file or bundled fixture name (e.g. 'fig4')"),
    trajectory: Path | None = typer.Option(
        None,
        "--trajectory",
        "-t",
        help="Write the sampled (t, x, v, u) trajectory to this CSV file",
    ),
    step: float = typer.Option(
        DEFAULT_TRAJECTORY_STEP,
        "--step",
        help="Sampling step of the trajectory CSV in seconds",
    ),
    verbose: bool = typer.Option(
        False,
        "--verbose",
        "-v",
        help="Enable verbose output",
    ),
) -> None:
    """
    Plan the optimal green arrival for a scenario.

    Prints the chosen branch, case, arrival time, energy and weighted cost,
    followed by every candidate arrival that was considered.

    Examples:
        $ ecoand plan fig4
        $ ecoand plan my.scenario --trajectory out.csv --step 0.01
    """
    _set_verbosity(verbose)
    if step <= 0:
        typer.echo("❌ --step must be positive", err=True)
        raise typer.Exit(code=EXIT_INPUT_ERROR)

    scenario = load_scenario_or_exit(scenario_path)
    outcome = plan_or_exit(scenario)
    chosen = outcome.chosen
    w = outcome.weights

    typer.echo(f"✅ Branch: {outcome.branch.value}")
    typer.echo(f"  Case: {chosen.case}")
    typer.echo(f"  Arrival time t_p: {chosen.t_p:.4f} s")
    typer.echo(f"  Terminal speed: {chosen.v_tp:.4f} m/s")
    typer.echo(f"  Energy J^u: {chosen.energy:.4f}")
    typer.echo(
        f"  Weighted cost: {chosen.weighted_cost:.4f} "
        f"(time {w.rho_t * (chosen.t_p - scenario.t0):.4f} + energy {w.rho_u * chosen.energy:.4f})",
    )
    typer.echo(f"  Profile: {chosen.profile.describe()}")
    typer.echo(f"  Free optimum: t_p={outcome.free.t_p:.4f} s, cost {outcome.free.weighted_cost:.4f}")
    typer.echo("  Candidates:")
    for candidate in outcome.candidates:
        detail = "" if candidate.feasible else f" [{candidate.reason}]"
        typer.echo(
            f"    - {candidate.branch.value}: t_p={candidate.t_p:.4f} s, "
            f"cost {_format_cost(candidate.weighted_cost)}{detail}",
        )

    if trajectory is not None:
        try:
            write_csv(trajectory, TRAJECTORY_COLUMNS, trajectory_rows(chosen.profile, step))
        except OSError as e:
            typer.echo(f"❌ Error writing trajectory: {str(e)}", err=True)
            raise typer.Exit(code=EXIT_INPUT_ERROR)
        typer.echo(f"💾 Trajectory saved to {trajectory}")


@app.command()
def sweep(
    scenario_path: str = typer.Argument(..., help="Scenario file or bundled fixture name"),
    rho_min: float = typer.Option(0.0, "--rho-min", help="First trade-off value"),
    rho_max: float = typer.Option(1.0, "--rho-max", help="Last trade-off value"),
    steps: int = typer.Option(11, "--steps", help="Number of evenly spaced trade-off values"),
    output: Path | None = typer.Option(
        None,
        "--output",
        "-o",
        help="Write the CSV to this file instead of standard output",
    ),
    verbose: bool = typer.Option(
        False,
        "--verbose",
        "-v",
        help="Enable verbose output",
    ),
) -> None:
    """
    Re-plan a scenario over a range of trade-off values.

    Emits CSV with columns rho,t_p,energy,cost, re-deriving the weights for
    every value of rho.

    Example:
        $ ecoand sweep fig2 --rho-min 0 --rho-max 1 --steps 21
    """
    _set_verbosity(verbose)
    if not 0.0 <= rho_min < rho_max <= 1.0 or steps < 2:
        typer.echo("❌ Need 0 <= rho-min < rho-max <= 1 and at least 2 steps", err=True)
        raise typer.Exit(code=EXIT_INPUT_ERROR)

    scenario = load_scenario_or_exit(scenario_path)
    rows = []
    for rho in np.linspace(rho_min, rho_max, steps):
        outcome = plan_or_exit(scenario.model_copy(update={"rho": float(rho)}))
        chosen = outcome.chosen
        rows.append((float(rho), chosen.t_p, chosen.energy, chosen.weighted_cost))

    if output is None:
        typer.echo(format_csv(SWEEP_COLUMNS, rows), nl=False)
        return

    try:
        write_csv(output, SWEEP_COLUMNS, rows)
    except OSError as e:
        typer.echo(f"❌ Error writing sweep: {str(e)}", err=True)
        raise typer.Exit(code=EXIT_INPUT_ERROR)

    first, last = rows[0], rows[-1]
    typer.echo(f"💾 Sweep of {steps} values saved to {output}")
    typer.echo(f"  Travel time change: {(last[1] - first[1]) / (first[1] - scenario.t0):+.2%}")
    if first[2] > 0:
        typer.echo(f"  Energy change: {(last[2] - first[2]) / first[2]:+.2%}")


@app.command()
def compare(
    scenario_paths: list[str] = typer.Argument(..., help="One or more scenario files or fixture names"),
    output_dir: Path | None = typer.Option(
        None,
        "--output-dir",
        "-o",
        help="Write <name>-hd.csv and <name>-av.csv trajectories into this directory",
    ),
    step: float = typer.Option(
        DEFAULT_TRAJECTORY_STEP,
        "--step",
        help="Sampling step of the trajectory CSVs in seconds",
    ),
    verbose: bool = typer.Option(
        False,
        "--verbose",
        "-v",
        help="Enable verbose output",
    ),
) -> None:
    """
    Compare the planner against the rule-based human driver.

    Prints one row per scenario with both weighted costs and the improvement
    (HD - AV) / HD, which is negative when the human driver does better.

    Example:
        $ ecoand compare fig1 fig2 fig3 fig4 fig8
        $ ecoand compare fig4 --output-dir runs/
    """
    _set_verbosity(verbose)
    if step <= 0:
        typer.echo("❌ --step must be positive", err=True)
        raise typer.Exit(code=EXIT_INPUT_ERROR)
    scenarios = [(source, load_scenario_or_exit(source)) for source in scenario_paths]

    typer.echo(f"{'scenario':<20} {'HD':>8} {'AV':>8} {'improvement':>12}")
    for source, scenario in scenarios:
        try:
            result = compare_scenario(scenario)
        except NoFeasiblePlanError as e:
            typer.echo(f"❌ No feasible plan for {source}: {str(e)}", err=True)
            raise typer.Exit(code=EXIT_NO_PLAN)
        typer.echo(
            f"{source:<20} {result.human.weighted_cost:>8.4f} "
            f"{result.planned.chosen.weighted_cost:>8.4f} {result.improvement:>12.2%}",
        )
        if output_dir is not None:
            _write_comparison(output_dir, Path(source).stem, result, step)


def _write_comparison(output_dir: Path, name: str, result: Comparison, step: float) -> None:
    try:
        output_dir.mkdir(parents=True, exist_ok=True)
        write_csv(output_dir / f"{name}-hd.csv", TRAJECTORY_COLUMNS, human_trajectory(result.human, step))
        write_csv(
            output_dir / f"{name}-av.csv",
            TRAJECTORY_COLUMNS,
            trajectory_rows(result.planned.chosen.profile, step),
        )
    except OSError as e:
        typer.echo(f"❌ Error writing trajectories: {str(e)}", err=True)
        raise typer.Exit(code=EXIT_INPUT_ERROR)
    logger.debug(f"Trajectories for {name} written to {output_dir}")


def _resolve_grid(
    config_path: str | None,
    grid_name: str,
    dt: float | None,
    dv: float | None,
    dx: float | None,
    levels: int | None,
) -> GridSpec:
    try:
        grid = ConfigManager(config_path).get_grid(grid_name)
        requested = {"dt": dt, "dv": dv, "dx": dx, "control_levels": levels}
        overrides = {key: value for key, value in requested.items() if value is not None}
        return GridSpec.model_validate({**grid.model_dump(), **overrides})
    except (OSError, ValueError) as e:
        typer.echo(f"❌ Error loading grid configuration: {str(e)}", err=True)
        raise typer.Exit(code=EXIT_INPUT_ERROR)


def _echo_report(report: CrosscheckReport) -> None:
    status = "✅" if report.passed else "❌"
    typer.echo(
        f"{status} {report.label:<20} t_p={report.t_p:>9.4f} analytical={report.analytical_energy:>10.5f} "
        f"dp={report.dp_energy:>10.5f} gap={report.abs_gap:.5f} ({report.rel_gap:.2%})",
    )


@app.command()
def verify(
    scenario_paths: list[str] | None = typer.Argument(None, help="Scenario files or fixture names to verify"),
    grid_name: str = typer.Option(DEFAULT_GRID, "--grid", "-g", help="Named oracle grid from the presets"),
    dt: float | None = typer.Option(None, "--dt", help="Override the grid time step (s)"),
    dv: float | None = typer.Option(None, "--dv", help="Override the grid speed spacing (m/s)"),
    dx: float | None = typer.Option(None, "--dx", help="Override the terminal position tolerance (m)"),
    levels: int | None = typer.Option(None, "--levels", help="Override the number of control levels"),
    random_count: int = typer.Option(0, "--random", help="Add this many seeded random scenarios"),
    seed: int = typer.Option(0, "--seed", help="Seed for the random scenarios"),
    limits_name: str | None = typer.Option(None, "--limits", help="Named limit preset for the random scenarios"),
    config_path: str | None = typer.Option(
        None,
        "--config",
        "-c",
        help="Path to a custom presets file",
    ),
    verbose: bool = typer.Option(
        False,
        "--verbose",
        "-v",
        help="Enable verbose output",
    ),
) -> None:
    """
    Cross-check planned energies against the dynamic-programming oracle.

    Exits with code 3 if any scenario's gap exceeds the tolerance or the
    analytical energy exceeds the oracle's by more than the grid slack.

    Examples:
        $ ecoand verify fig3
        $ ecoand verify fig1 fig4 --grid coarse --random 20 --seed 7
        $ ecoand verify --random 5 --limits urban
    """
    _set_verbosity(verbose)
    grid = _resolve_grid(config_path, grid_name, dt, dv, dx, levels)
    limits = None
    if limits_name:
        try:
            limits = ConfigManager(config_path).get_limits(limits_name)
        except (OSError, ValueError) as e:
            typer.echo(f"❌ Error loading limits preset: {str(e)}", err=True)
            raise typer.Exit(code=EXIT_INPUT_ERROR)

    batch = [(source, load_scenario_or_exit(source)) for source in scenario_paths or []]
    batch += [(f"random-{i}", s) for i, s in enumerate(random_scenarios(random_count, seed, limits=limits))]
    if not batch:
        typer.echo("❌ Nothing to verify: give scenarios or --random N", err=True)
        raise typer.Exit(code=EXIT_INPUT_ERROR)

    typer.echo(f"🔎 Oracle grid: dt={grid.dt}, dv={grid.dv}, dx={grid.dx}, levels={grid.control_levels}")
    failures = 0
    for label, scenario in batch:
        try:
            report = crosscheck(scenario, grid, label=label)
        except NoFeasiblePlanError as e:
            typer.echo(f"⚠️ {label}: skipped, no feasible plan ({str(e)})")
            continue
        except OracleInfeasibleError as e:
            typer.echo(f"❌ {label}: oracle infeasible ({str(e)})")
            failures += 1
            continue
        except (EcoAndError, ValueError) as e:
            typer.echo(f"❌ {label}: verification failed: {str(e)}", err=True)
            raise typer.Exit(code=EXIT_INPUT_ERROR)
        _echo_report(report)
        if not report.passed:
            failures += 1

    if failures:
        typer.echo(f"❌ {failures} of {len(batch)} scenarios failed the oracle check", err=True)
        raise typer.Exit(code=EXIT_ORACLE_GAP)
    typer.echo(f"✅ All {len(batch)} scenarios agree with the oracle")


@app.command()
def info(
    list_fixture_names: bool = typer.Option(
        False,
        "--list-fixtures",
        "-l",
        help="List the bundled scenario fixtures",
    ),
    list_grid_names: bool = typer.Option(
        False,
        "--list-grids",
        "-g",
        help="List the named oracle grids",
    ),
) -> None:
    """Show information about ECO-AND and available commands."""
    if list_fixture_names:
        typer.echo("Bundled scenario fixtures:")
        for name in list_fixtures():
            typer.echo(f"  - {name}: {describe_fixture(name)}")
        return

    if list_grid_names:
        typer.echo("Oracle grids:")
        config = ConfigManager()
        for name, description in config.get_grid_descriptions().items():
            typer.echo(f"  - {name}: {description}")
        typer.echo("Limit presets: " + ", ".join(config.list_limits()))
        return

    typer.echo("ECO-AND - Eco-driving arrival planner")
    typer.echo("\nPlans the acceleration profile that trades travel time against energy")
    typer.echo("for a vehicle approaching a signalized intersection, arriving under green.")
    typer.echo("\nAvailable commands:")
    typer.echo("  - plan: Plan the optimal green arrival for a scenario")
    typer.echo("  - sweep: Re-plan over a range of trade-off values and emit CSV")
    typer.echo("  - compare: Compare the planner against the rule-based human driver")
    typer.echo("  - verify: Cross-check planned energies against the DP oracle")
    typer.echo("  - info: Show this information")
    typer.echo("\nRun 'ecoand COMMAND --help' for more information on a command")


if __name__ == "__main__":
    app()
