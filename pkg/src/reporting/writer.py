"""
Bit-stable CSV output.

Numbers are written as %.16e (17 significant digits, `.` decimal point,
no locale), so every field parses back to the same double. Lines end in
`\n`. Files start with `# key: value` metadata lines, then the header.
A file is written to a temporary sibling and renamed into place, so a
failed run never leaves a partial file.
"""

import csv
import logging
import os
import tempfile
from pathlib import Path
from typing import Any, Iterable, List, Sequence, Tuple

from src import __version__
from src.config import RunConfig, config_hash
from src.simulation import RNG_ALGORITHM

logger = logging.getLogger(__name__)

CONVENTIONS: List[Tuple[str, str]] = [
    ('variance_law', 'Lambda term 2*Lambda*hbar^2*t^3/(3*m^2) (m^2, not m^3)'),
    ('overlap_parameter', 'lambda = b/(2a)'),
    ('csl_formula', 'sphere form factor f(a/r_c); not taken from the feasibility analysis'),
]


def format_value(value: Any) -> str:
    """Render one CSV field."""
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.16e}"
    return str(value)


def metadata_lines(command: str, config: RunConfig) -> List[Tuple[str, str]]:
    """Metadata recorded at the top of every output file."""
    return [
        ('tool', f"freefall-feasibility {__version__}"),
        ('command', command),
        ('config_sha256', config_hash(config)),
        *CONVENTIONS,
        ('rng', RNG_ALGORITHM),
    ]


def _current_umask() -> int:
    umask = os.umask(0)
    os.umask(umask)
    return umask


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[Any]],
              metadata: Sequence[Tuple[str, str]] = ()) -> Path:
    """
    Atomically write a CSV file.

    Args:
        path: Destination
        header: Column names
        rows: Data rows; floats are written with 17 significant digits
        metadata: (key, value) pairs written as `# key: value` lines

    Returns:
        The destination path
    """
    path = Path(path)
    directory = path.parent if str(path.parent) else Path('.')
    fd, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", suffix='.tmp', dir=directory)
    try:
        with os.fdopen(fd, 'w', encoding='utf-8', newline='') as f:
            for key, value in metadata:
                f.write(f"# {key}: {value}\n")
            writer = csv.writer(f, lineterminator='\n')
            writer.writerow(header)
            for row in rows:
                writer.writerow([format_value(v) for v in row])
        os.chmod(tmp_name, 0o666 & ~_current_umask())
        os.replace(tmp_name, path)
    except BaseException:
        try:
            os.unlink(tmp_name)
        except FileNotFoundError:
            pass
        raise
    logger.info("wrote %s", path)
    return path
