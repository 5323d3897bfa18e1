"""
File formats for the Certified Chain Cover Engine.

Covers are written as CSV with one row per link ball (link_ordinal,
ball_index, center, radius), centers as semicolon-separated "p/q" and
radii as "p/q", next to a JSON sidecar with the drawing metadata.
Emission files use the same columns with an emission ordinal. SVG
renderings are for inspection only.
"""

import csv
import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np
from matplotlib import patches

from ambient.types import Ball, Point, SetCode, format_rational, parse_rational
from geometry_oracle.fixtures import Fixture
from geometry_oracle.pieces import Disk, ParamPiece, PointPiece, RayPiece

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]
COVER_COLUMNS = ["link_ordinal", "ball_index", "center", "radius"]
EMISSION_COLUMNS = ["emission", "ball_index", "center", "radius"]
SAMPLES_PER_PIECE = 64


def _ball_row(ordinal: int, ball: Ball) -> List[str]:
  return [str(ordinal), str(ball.index), Point(ball.center).format(";"), format_rational(ball.radius)]


def _parse_ball_row(row: Dict[str, str], where: str) -> Ball:
  try:
    center = Point.parse(row["center"], sep=";")
    radius = parse_rational(row["radius"])
    ball = Ball(center.coords, radius)
  except (KeyError, ValueError) as e:
    raise ValueError(f"{where}: malformed ball row {row!r}: {e}")
  if "ball_index" in row and row["ball_index"] != "" and int(row["ball_index"]) != ball.index:
    raise ValueError(f"{where}: ball_index {row['ball_index']} does not match its center and radius")
  return ball


def write_links_csv(links: Sequence[SetCode], path: PathLike, delimiter: str = ",") -> Path:
  """
  Write links as CSV rows, one row per ball.

  Raises:
      OSError: If the file cannot be written
  """
  path = Path(path)
  try:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
      writer = csv.writer(f, delimiter=delimiter, lineterminator="\n")
      writer.writerow(COVER_COLUMNS)
      for ordinal, link in enumerate(links):
        for ball in link.decoded:
          writer.writerow(_ball_row(ordinal, ball))
  except OSError as e:
    logger.error(f"Error writing cover CSV {path}: {e}")
    raise
  logger.info(f"Wrote {len(links)} links to {path}")
  return path


def read_links_csv(path: PathLike, delimiter: str = ",") -> List[SetCode]:
  """
  Read links written by write_links_csv.

  Raises:
      FileNotFoundError: If the file does not exist
      ValueError: If a row is malformed or link ordinals have gaps
  """
  path = Path(path)
  if not path.exists():
    raise FileNotFoundError(f"Cover file not found: {path}")
  grouped: Dict[int, List[Ball]] = {}
  with open(path, "r", encoding="utf-8", newline="") as f:
    reader = csv.DictReader(f, delimiter=delimiter)
    for line, row in enumerate(reader, start=2):
      try:
        ordinal = int(row["link_ordinal"])
      except (KeyError, TypeError, ValueError) as e:
        raise ValueError(f"{path}:{line}: bad link_ordinal: {e}")
      grouped.setdefault(ordinal, []).append(_parse_ball_row(row, f"{path}:{line}"))
  if not grouped:
    raise ValueError(f"{path}: no links")
  if sorted(grouped) != list(range(len(grouped))):
    raise ValueError(f"{path}: link ordinals must be 0..{len(grouped) - 1}")
  return [SetCode.from_balls(grouped[o]) for o in range(len(grouped))]


def sidecar_path(path: PathLike) -> Path:
  return Path(path).with_suffix(".json")


def write_sidecar(metadata: Dict[str, Any], path: PathLike) -> Path:
  """Write the JSON sidecar next to a CSV file."""
  target = sidecar_path(path)
  try:
    with open(target, "w", encoding="utf-8") as f:
      json.dump(metadata, f, indent=2, sort_keys=True)
      f.write("\n")
  except OSError as e:
    logger.error(f"Error writing sidecar {target}: {e}")
    raise
  return target


def read_sidecar(path: PathLike) -> Optional[Dict[str, Any]]:
  """The sidecar of a CSV file, or None when there is none."""
  target = sidecar_path(path)
  if not target.exists():
    return None
  try:
    with open(target, "r", encoding="utf-8") as f:
      return json.load(f)
  except json.JSONDecodeError as e:
    logger.error(f"Error parsing sidecar {target}: {e}")
    raise ValueError(f"malformed sidecar {target}: {e}")


def write_cover(cover, path: PathLike, delimiter: str = ",") -> Path:
  """Write a CertifiedCover as CSV plus its sidecar."""
  write_links_csv(cover.links, path, delimiter)
  write_sidecar(cover.metadata(), path)
  return Path(path)


def write_emissions_csv(indices: Iterable[int], path: PathLike, delimiter: str = ",") -> Path:
  """Write emitted ball indices, one row each, in emission order."""
  path = Path(path)
  count = 0
  try:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
      writer = csv.writer(f, delimiter=delimiter, lineterminator="\n")
      writer.writerow(EMISSION_COLUMNS)
      for ordinal, i in enumerate(indices):
        ball = Ball.from_index(i)
        writer.writerow([str(ordinal), str(i), Point(ball.center).format(";"), format_rational(ball.radius)])
        count += 1
  except OSError as e:
    logger.error(f"Error writing emissions {path}: {e}")
    raise
  logger.info(f"Wrote {count} emissions to {path}")
  return path


def read_emissions_csv(path: PathLike, delimiter: str = ",") -> List[int]:
  """
  Read the ball indices of an emission file in emission order.

  Raises:
      FileNotFoundError: If the file does not exist
      ValueError: If a row is malformed
  """
  path = Path(path)
  if not path.exists():
    raise FileNotFoundError(f"Emission file not found: {path}")
  out: List[int] = []
  with open(path, "r", encoding="utf-8", newline="") as f:
    reader = csv.DictReader(f, delimiter=delimiter)
    for line, row in enumerate(reader, start=2):
      try:
        out.append(int(row["ball_index"]))
      except (KeyError, TypeError, ValueError) as e:
        raise ValueError(f"{path}:{line}: bad ball_index: {e}")
  return out


def write_index_list(indices: Sequence[int], path: PathLike, meta: Optional[Dict[str, Any]] = None) -> Path:
  """Write a witness list as JSON."""
  path = Path(path)
  data = dict(meta or {})
  data["indices"] = [int(i) for i in indices]
  try:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
      json.dump(data, f, indent=2, sort_keys=True)
      f.write("\n")
  except OSError as e:
    logger.error(f"Error writing witness list {path}: {e}")
    raise
  logger.info(f"Wrote {len(indices)} witness indices to {path}")
  return path


def read_index_list(path: PathLike) -> List[int]:
  """Read the indices of a witness list written by write_index_list."""
  path = Path(path)
  if not path.exists():
    raise FileNotFoundError(f"Witness list not found: {path}")
  try:
    with open(path, "r", encoding="utf-8") as f:
      data = json.load(f)
    return [int(i) for i in data["indices"]]
  except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
    logger.error(f"Error reading witness list {path}: {e}")
    raise ValueError(f"malformed witness list {path}: {e}")


def _curve_polylines(fixture: Fixture, extent: Fraction) -> List[np.ndarray]:
  lines = []
  for piece in fixture.curve:
    if not isinstance(piece, ParamPiece):
      continue
    t0 = float(piece.t0)
    if isinstance(piece, RayPiece):
      t1 = t0 + float(extent) / max(float(piece.lipschitz), 1e-12)
    else:
      t1 = float(piece.t1)
    ts = np.linspace(t0, t1, SAMPLES_PER_PIECE)
    pts = np.array([[float(c) for c in piece.point(Fraction(t).limit_denominator(1 << 20))] for t in ts])
    lines.append(pts)
  return lines


def render_svg(
  balls: Sequence[Tuple[int, Ball]],
  path: PathLike,
  fixture: Optional[Fixture] = None,
  title: str = "",
) -> Path:
  """
  Render link balls (and the fixture, when given) as a planar SVG.

  Colors cycle with the link ordinal. Output is deterministic: fixed hash
  salt and no date metadata.

  Raises:
      ValueError: If the ambient space is not the plane
  """
  path = Path(path)
  if balls and len(balls[0][1].center) != 2:
    raise ValueError("SVG rendering needs planar balls")
  plt.rcParams["svg.hashsalt"] = "chain-cover"
  fig, ax = plt.subplots(figsize=(8, 8))
  cmap = plt.get_cmap("viridis")
  count = max((o for o, _ in balls), default=0) + 1
  xs, ys, extent = [], [], Fraction(1)
  for ordinal, ball in balls:
    cx, cy = (float(c) for c in ball.center)
    ax.add_patch(patches.Circle((cx, cy), float(ball.radius), fill=False, linewidth=0.6,
                                edgecolor=cmap(ordinal / max(count - 1, 1))))
    xs.extend([cx - float(ball.radius), cx + float(ball.radius)])
    ys.extend([cy - float(ball.radius), cy + float(ball.radius)])
    extent = max(extent, max(abs(c) for c in ball.center) + ball.radius)
  if fixture is not None:
    for pts in _curve_polylines(fixture, 2 * extent):
      ax.plot(pts[:, 0], pts[:, 1], color="black", linewidth=0.8)
    for piece in fixture.pieces():
      if isinstance(piece, Disk):
        ax.add_patch(patches.Circle(tuple(float(c) for c in piece.center), float(piece.radius),
                                    facecolor="lightgray", edgecolor="gray", alpha=0.5))
      elif isinstance(piece, PointPiece):
        ax.plot([float(piece.p[0])], [float(piece.p[1])], marker="o", color="black", markersize=3)
  if xs:
    pad = 0.1 * max(max(xs) - min(xs), max(ys) - min(ys), 1e-6)
    ax.set_xlim(min(xs) - pad, max(xs) + pad)
    ax.set_ylim(min(ys) - pad, max(ys) + pad)
  ax.set_aspect("equal")
  if title:
    ax.set_title(title)
  try:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="svg", metadata={"Date": None})
  except OSError as e:
    logger.error(f"Error writing SVG {path}: {e}")
    raise
  finally:
    plt.close(fig)
  logger.info(f"Rendered {len(balls)} balls to {path}")
  return path
