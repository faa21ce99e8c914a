from ecoand.parser.scenario_parser import ScenarioFile, parse_scenario, parse_scenario_file

__all__ = ["ScenarioFile", "parse_scenario", "parse_scenario_file"]
