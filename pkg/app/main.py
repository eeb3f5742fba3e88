"""
Main - Entry Point de la CLI de ContraKernel

Subcomandos: eval, exp, gram, norms, duality, bergman-table
Códigos de salida: 0 ok, 2 índice no válido, 3 error de dominio, 4 tolerancia superada
"""
import argparse
import logging
from typing import Any, Dict, List, Optional, Sequence

from pydantic import ValidationError

from app.config import settings
from app.schemas.basis import BasisIndex, Domain, Parity
from app.schemas.point import Point3
from app.schemas.report import OutputFormat, RunConfig
from app.services.basis import evaluate
from app.services.bergman import Operator
from app.services.exponential import ExpVariant, monogenic_exp
from app.services.report_service import GRAM_FAMILIES, ReportService
from app.utils.errors import ContraKernelError, DomainError, InvalidIndexError
from app.utils.log import setup_logging
from app.utils.output import emit, render_csv, render_json

logger = logging.getLogger(__name__)

KINDS = ("U", "X", "Xbar", "Y", "Ytilde", "Z")

DEFAULT_TRUNCATIONS = {Operator.M: [5, 10, 15, 20], Operator.N: [15, 20, 25, 30]}
DEFAULT_RADII = {Domain.INTERIOR: [0.2, 0.4, 0.6, 0.8], Domain.EXTERIOR: [1.25, 1.5, 2.0, 3.0]}
DEFAULT_EXP_RADII = {ExpVariant.E: [0.5, 0.8, 1.0], ExpVariant.ESTAR: [1.0, 1.25, 2.0]}
TABLE_DIGITS = 3


def _float_list(text: str) -> List[float]:
    return [float(v) for v in text.split(",") if v.strip()]


def _int_list(text: str) -> List[int]:
    return [int(v) for v in text.split(",") if v.strip()]


def _add_common(parser: argparse.ArgumentParser, quadrature: bool = True) -> None:
    parser.add_argument("--format", choices=[f.value for f in OutputFormat], default="csv", help="Formato de salida")
    parser.add_argument("--output", default=None, help="Fichero de salida (stdout si falta)")
    if quadrature:
        parser.add_argument("--radial", type=int, default=settings.QUAD_RADIAL, help="Nodos radiales (por defecto %(default)s)")
        parser.add_argument("--polar", type=int, default=settings.QUAD_POLAR, help="Nodos en cos(theta) (por defecto %(default)s)")
        parser.add_argument("--azimuthal", type=int, default=settings.QUAD_AZIMUTHAL, help="Nodos en phi (por defecto %(default)s)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="contrakernel",
        description=f"{settings.APP_NAME} {settings.VERSION}: bases monogénicas y contragénicas en la bola unidad y núcleos de Bergman",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="Evaluar una función base en un punto")
    p_eval.add_argument("--kind", choices=KINDS, required=True)
    p_eval.add_argument("--domain", choices=[d.value for d in Domain], default=None, help="Por defecto según el signo de n")
    p_eval.add_argument("--n", type=int, required=True)
    p_eval.add_argument("--m", type=int, required=True)
    p_eval.add_argument("--parity", default="plus", help="plus / minus (o + / -)")
    p_eval.add_argument("--point", required=True, help="x0,x1,x2 (use --point=-0.1,0.2,0.3 si empieza por '-')")
    _add_common(p_eval, quadrature=False)

    p_exp = sub.add_parser("exp", help="Exponencial monogénica E o E*")
    p_exp.add_argument("--variant", choices=[v.value for v in ExpVariant], default="E")
    p_exp.add_argument("--point", default=None, help="x0,x1,x2")
    p_exp.add_argument("--grid", action="store_true", help="Muestras (theta, phi) sobre esferas")
    p_exp.add_argument("--rho", type=_float_list, default=None, help="Radios de la malla")
    _add_common(p_exp, quadrature=False)

    p_gram = sub.add_parser("gram", help="Matrices de Gram por cuadratura")
    p_gram.add_argument("--family", choices=GRAM_FAMILIES, default="X")
    p_gram.add_argument("--domain", choices=[d.value for d in Domain], default="interior")
    p_gram.add_argument("--max-degree", type=int, default=4)
    p_gram.add_argument("--tol", type=float, default=None)
    _add_common(p_gram)

    p_norms = sub.add_parser("norms", help="Normas cerradas frente a cuadratura")
    p_norms.add_argument("--domain", choices=[d.value for d in Domain], default="interior")
    p_norms.add_argument("--max-degree", type=int, default=4)
    p_norms.add_argument("--tol", type=float, default=None)
    _add_common(p_norms)

    p_dual = sub.add_parser("duality", help="Residuo de la dualidad Z <-> Vec X")
    p_dual.add_argument("--max-degree", type=int, default=4)
    p_dual.add_argument("--points", type=int, default=20, help="Puntos aleatorios por índice")
    p_dual.add_argument("--seed", type=int, default=0)
    p_dual.add_argument("--tol", type=float, default=1e-12)
    _add_common(p_dual, quadrature=False)

    p_table = sub.add_parser("bergman-table", help="Tablas de error de los proyectores truncados")
    p_table.add_argument("--domain", choices=[d.value for d in Domain], default="interior")
    p_table.add_argument("--operator", choices=[o.value for o in Operator], default="M")
    p_table.add_argument("--target", choices=[v.value for v in ExpVariant], default=None, help="E (interior) o Estar (exterior)")
    p_table.add_argument("--N", dest="truncations", type=_int_list, default=None, help="Lista de N, p.ej. 5,10,15,20")
    p_table.add_argument("--rho", type=_float_list, default=None, help="Lista de radios")
    p_table.add_argument("--grid", action="store_true", help="Muestras de B_M[Vec f] sobre la esfera --grid-rho")
    p_table.add_argument("--grid-rho", type=float, default=None, help="Radio de la malla (0.9 interior, 1.25 exterior)")
    _add_common(p_table)

    return parser


# ============================================
# COMANDOS
# ============================================

def _run_config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        domain=getattr(args, "domain", None) or Domain.INTERIOR,
        max_degree=getattr(args, "max_degree", 4),
        radial=getattr(args, "radial", settings.QUAD_RADIAL),
        polar=getattr(args, "polar", settings.QUAD_POLAR),
        azimuthal=getattr(args, "azimuthal", settings.QUAD_AZIMUTHAL),
        tol=getattr(args, "tol", None),
        output_format=args.format,
        output=args.output,
    )


def _write(config: RunConfig, rows: Sequence[Dict[str, Any]], summary: Optional[Dict[str, Any]] = None, columns=None, significant: Optional[int] = None) -> None:
    if config.output_format is OutputFormat.JSON:
        text = render_json({"command": config.command, "summary": summary or {}, "rows": list(rows)})
    else:
        text = render_csv(list(rows), columns, significant)
    emit(text, config.output)


def cmd_eval(args: argparse.Namespace, config: RunConfig) -> None:
    point = _parse_point(args.point)
    family = "X" if args.kind == "Xbar" else args.kind
    idx = BasisIndex.make(family, args.n, args.m, _parse_parity(args.parity), domain=args.domain, conjugate=args.kind == "Xbar")
    value = evaluate(idx, point)
    rho, theta, phi = point.spherical
    _write(config, [{
        "kind": args.kind,
        "index": idx.label,
        "a0": value.a0,
        "a1": value.a1,
        "a2": value.a2,
        "rho": rho,
        "theta": theta,
        "phi": phi,
    }])


def cmd_exp(args: argparse.Namespace, config: RunConfig, service: ReportService) -> None:
    variant = ExpVariant(args.variant)
    if args.grid:
        samples = service.exp_grid(variant, args.rho or DEFAULT_EXP_RADII[variant])
        _write(config, [s.model_dump() for s in samples], {"variant": variant.value, "samples": len(samples)})
        return
    if args.point is None:
        raise InvalidIndexError("exp necesita --point o --grid")
    point = _parse_point(args.point)
    value = monogenic_exp(point, variant)
    _write(config, [{"variant": variant.value, "x0": point.x0, "x1": point.x1, "x2": point.x2,
                     "a0": value.a0, "a1": value.a1, "a2": value.a2}])


def cmd_gram(args: argparse.Namespace, config: RunConfig, service: ReportService) -> None:
    report = service.gram(args.family, config.domain, config.max_degree)
    summary = {
        "family": report.family,
        "domain": report.domain.value,
        "size": report.size,
        "max_offdiag_ratio": report.max_offdiag_ratio,
        "max_diag_deviation": report.max_diag_deviation,
    }
    _write(config, [r.model_dump() for r in report.rows], summary)
    service.check_tolerance(f"gram {report.family}", report.max_deviation, config.tol)


def cmd_norms(args: argparse.Namespace, config: RunConfig, service: ReportService) -> None:
    rows = service.norms(config.domain, config.max_degree)
    max_dev = max((r.rel_deviation for r in rows), default=0.0)
    _write(config, [r.model_dump(mode="json") for r in rows], {"rows": len(rows), "max_rel_deviation": max_dev})
    service.check_tolerance("norms", max_dev, config.tol)


def cmd_duality(args: argparse.Namespace, config: RunConfig, service: ReportService) -> None:
    rows = service.duality(config.max_degree, args.points, args.seed)
    max_res = max((r.max_residual for r in rows), default=0.0)
    max_star = max((r.star_residual for r in rows), default=0.0)
    _write(config, [r.model_dump() for r in rows], {"rows": len(rows), "max_residual": max_res, "max_star_residual": max_star})
    service.check_tolerance("duality", max_res, config.tol)


def cmd_bergman_table(args: argparse.Namespace, config: RunConfig, service: ReportService) -> None:
    domain = config.domain
    operator = Operator(args.operator)
    target = ExpVariant(args.target) if args.target else (ExpVariant.E if domain is Domain.INTERIOR else ExpVariant.ESTAR)
    if args.grid:
        rho = args.grid_rho or (0.9 if domain is Domain.INTERIOR else 1.25)
        truncations = args.truncations or [1, 2, 3, 4]
        grids = service.projection_grid(domain, target, truncations, rho)
        rows = [{"N": n, **s.model_dump()} for n in sorted(grids) for s in grids[n]]
        _write(config, rows, {"domain": domain.value, "target": target.value, "rho": rho})
        return
    truncations = args.truncations or DEFAULT_TRUNCATIONS[operator]
    radii = args.rho or DEFAULT_RADII[domain]
    table = service.bergman_table(domain, operator, target, truncations, radii)
    summary = {"domain": domain.value, "operator": table.operator, "target": table.target}
    _write(config, table.as_rows(), summary, table.columns, significant=TABLE_DIGITS)


def _parse_point(text: str) -> Point3:
    try:
        return Point3.parse(text)
    except ValueError as e:
        raise DomainError(f"Punto no válido: {e}")


def _parse_parity(text: str) -> Parity:
    try:
        return Parity.parse(text)
    except ValueError as e:
        raise InvalidIndexError(str(e))


def main(argv: Optional[Sequence[str]] = None) -> int:
    setup_logging()
    args = build_parser().parse_args(argv)
    try:
        config = _run_config(args)
        service = ReportService(config.radial, config.polar, config.azimuthal)
        if args.command == "eval":
            cmd_eval(args, config)
        elif args.command == "exp":
            cmd_exp(args, config, service)
        elif args.command == "gram":
            cmd_gram(args, config, service)
        elif args.command == "norms":
            cmd_norms(args, config, service)
        elif args.command == "duality":
            cmd_duality(args, config, service)
        else:
            cmd_bergman_table(args, config, service)
    except ValidationError as e:
        logger.error("Parámetros no válidos: %s", e)
        return 2
    except ContraKernelError as e:
        logger.error("%s", e.detail)
        return e.exit_code
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
