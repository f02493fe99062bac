import datetime
import json
import sys

import numpy as np

import api.data.Constants

def build_report(subcommand, graph, parameters, result):
    return {
        "tool": api.data.Constants.TOOL_NAME,
        "version": api.data.Constants.VERSION,
        "subcommand": subcommand,
        "graph": graph.describe(),
        "parameters": parameters,
        "generated_at": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "result": result
    }


def write_report(report, output_path=None):
    """Writes the report as one JSON document to `output_path`, or to stdout."""
    if output_path is None:
        json.dump(report, sys.stdout, indent=2, sort_keys=True, default=_default)
        sys.stdout.write("\n")
        return
    with open(output_path, 'wt', encoding='utf-8') as f:
        json.dump(report, f, indent=2, sort_keys=True, default=_default)
        f.write("\n")


def _default(value):
    if isinstance(value, np.integer):
        return int(value)
    try:
        return float(value)
    except (TypeError, ValueError):
        return str(value)
