"""
Wrapper fino para a CLI do pacote `multifase.main`.

Quando chamado sem subcomando, roda `fidelity`:
    python estimar.py --d 3 --n-max 4
Exemplo com subcomando explicito:
    python estimar.py --debug verify --suite optimality
"""

from __future__ import annotations

import sys

from multifase.main import COMMANDS, main


def _inject_subcommand(argv: list[str]) -> list[str]:
    """
    Insere 'fidelity' quando nenhum subcomando aparece em argv (sem o nome do script).

    Flags globais como --debug ficam antes do subcomando inserido.
    """
    if any(arg in COMMANDS for arg in argv):
        return argv
    global_flags = {"--debug"}
    globals_args = [arg for arg in argv if arg in global_flags]
    rest = [arg for arg in argv if arg not in global_flags]
    return [*globals_args, "fidelity", *rest]


if __name__ == "__main__":
    raise SystemExit(main(_inject_subcommand(sys.argv[1:])))
