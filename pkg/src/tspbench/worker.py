"""Worker-mode entry point: speak the wire protocol on stdin/stdout.

The coordinator spawns this as a child process (self-invocation with
the hidden --worker flag).  Tasks arrive one per line and each produces
exactly one result line.  A shutdown message ends the process with exit
code 0.  Any protocol violation or task failure emits an error message
and exits nonzero; the coordinator is fail-fast and discards partial
results, so there is no point in limping on.
"""

from __future__ import annotations

import sys

from .core import CostMatrix, solve_range
from .errors import ProtocolError, ValidationError
from .permutation import WorkRange
from .protocol import Task, decode_task, error_message, parse_message, result_message


def _run_task(task: Task):
    matrix = CostMatrix(task.matrix)
    if matrix.n != task.n:
        raise ProtocolError(f"task n={task.n} does not match a {matrix.n}-row matrix")
    work = WorkRange(task.start, task.end)
    if task.threads == 1:
        return solve_range(matrix, work)
    # Local fork team; imported lazily so plain message-passing workers
    # never pay the multiprocessing import.
    from .backends import solve_interval_team

    return solve_interval_team(matrix, work, task.threads)


def run_worker(stdin=None, stdout=None) -> int:
    inp = sys.stdin if stdin is None else stdin
    out = sys.stdout if stdout is None else stdout
    while True:
        line = inp.readline()
        if not line:
            return 1  # coordinator vanished without sending shutdown
        try:
            msg = parse_message(line)
            if msg["type"] == "shutdown":
                return 0
            if msg["type"] != "task":
                raise ProtocolError(f"unexpected {msg['type']!r} message for a worker")
            result = _run_task(decode_task(msg))
            out.write(result_message(result))
            out.flush()
        except (ProtocolError, ValidationError) as exc:
            out.write(error_message(str(exc)))
            out.flush()
            return 1
        except Exception as exc:  # defensive: report before dying
            out.write(error_message(f"{type(exc).__name__}: {exc}"))
            out.flush()
            return 1
