"""Input files: rings, modules and towers as TOML documents.

Ring document: `p` plus `kind` = "table" (with `struct_consts`, optional
`labels`) or "truncated_poly" (with `vars`, `cap`, optional `relations`) or
"product" (with `factors`, a list of ring tables).

Module document: `ring` (a path or an inline table) plus `kind`:
  - "regular": the ring acting on itself;
  - "quotient": regular modulo the ideal spanned by `gens` (monomial strings
    or coefficient vectors); local rings only;
  - "direct_sum": `summands`, a list of module tables inheriting the ring;
  - "explicit": `dim` and `action` as nested integer arrays (local rings);
  - "components": one module table per factor of a product ring.

Tower document: `p`, `vars`, optional `relations`, optional `name`.
"""

from __future__ import annotations

import os

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .errors import ParseError
from .modules import (
    Module,
    ProductRing,
    direct_sum,
    make_module,
    quotient_ring_module,
    regular_module,
)
from .rings import LocalAlgebra, ideal_span, make_local_algebra, truncated_polynomial_ring
from .tower import Tower, make_tower


def _load_toml(path: str) -> dict:
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except FileNotFoundError:
        raise ParseError(path, "file not found")
    except tomllib.TOMLDecodeError as err:
        raise ParseError(path, f"invalid TOML: {err}")


def ring_from_table(data: dict, path: str):
    kind = data.get("kind", "truncated_poly")
    try:
        if kind == "product":
            factors = data.get("factors")
            if not factors:
                raise ValueError("product ring needs a nonempty 'factors' list")
            return ProductRing(tuple(ring_from_table(f, path) for f in factors))
        p = data["p"]
        if kind == "table":
            return make_local_algebra(p, data["struct_consts"], data.get("labels"))
        if kind == "truncated_poly":
            return truncated_polynomial_ring(
                p, data["vars"], data["cap"], data.get("relations", ())
            )
    except ParseError:
        raise
    except KeyError as err:
        raise ParseError(path, f"missing ring field {err}")
    except Exception as err:
        raise ParseError(path, f"bad ring definition: {err}")
    raise ParseError(path, f"unknown ring kind {kind!r}")


def load_ring(path: str):
    return ring_from_table(_load_toml(path), path)


def _gen_vector(ring: LocalAlgebra, gen, path: str):
    if isinstance(gen, str):
        try:
            return ring.monomial_vector(gen)
        except ValueError as err:
            raise ParseError(path, str(err))
    if isinstance(gen, list) and len(gen) == ring.dim:
        return tuple(int(x) for x in gen)
    raise ParseError(path, f"generator {gen!r} is neither a monomial nor a length-{ring.dim} vector")


def module_from_table(data: dict, ring, path: str) -> Module:
    kind = data.get("kind", "regular")
    if kind == "regular":
        return regular_module(ring)
    if kind == "components":
        if not isinstance(ring, ProductRing):
            raise ParseError(path, "'components' requires a product ring")
        tables = data.get("components")
        if not tables or len(tables) != len(ring.factors):
            raise ParseError(path, "need one component table per ring factor")
        return make_module(
            ring,
            [module_from_table(t, f, path) for t, f in zip(tables, ring.factors)],
        )
    if isinstance(ring, ProductRing):
        raise ParseError(path, f"kind {kind!r} needs a local ring (use 'components')")
    if kind == "quotient":
        gens = [_gen_vector(ring, g, path) for g in data.get("gens", [])]
        return quotient_ring_module(ring, ideal_span(ring, gens))
    if kind == "direct_sum":
        tables = data.get("summands")
        if not tables:
            raise ParseError(path, "direct_sum needs a nonempty 'summands' list")
        return direct_sum([module_from_table(t, ring, path) for t in tables])
    if kind == "explicit":
        try:
            return make_module(ring, data["dim"], data["action"])
        except ParseError:
            raise
        except KeyError as err:
            raise ParseError(path, f"missing module field {err}")
        except Exception as err:
            raise ParseError(path, f"bad module definition: {err}")
    raise ParseError(path, f"unknown module kind {kind!r}")


def load_module(path: str) -> Module:
    data = _load_toml(path)
    ring_ref = data.get("ring")
    if isinstance(ring_ref, str):
        ring_path = os.path.join(os.path.dirname(path) or ".", ring_ref)
        ring = load_ring(ring_path)
    elif isinstance(ring_ref, dict):
        ring = ring_from_table(ring_ref, path)
    else:
        raise ParseError(path, "module file needs a 'ring' path or inline table")
    return module_from_table(data, ring, path)


def load_tower(path: str) -> Tower:
    data = _load_toml(path)
    try:
        return make_tower(
            data["p"], data["vars"], data.get("relations", ()), data.get("name", "")
        )
    except ParseError:
        raise
    except KeyError as err:
        raise ParseError(path, f"missing tower field {err}")
    except Exception as err:
        raise ParseError(path, f"bad tower definition: {err}")
