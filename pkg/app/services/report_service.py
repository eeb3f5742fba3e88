"""
Report Service - Informes de verificación de la CLI
Normas cerradas frente a cuadratura, matrices de Gram, dualidad, tablas de Bergman y mallas
"""
import logging
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from app.config import settings
from app.schemas.basis import BasisIndex, Domain, Family
from app.schemas.report import BergmanTable, DualityRow, GramReport, GramRow, GridSample, NormRow
from app.services.basis import closed_norm
from app.services.bergman import BergmanProjector, KernelTruncation, Operator, error_table, sphere_grid, truncation_list
from app.services.contragenic import duality_deviation
from app.services.exponential import variant_field
from app.services.harmonics import cartesian, degrees_for, index_range, indices_for, is_scalar_contragenic
from app.services.monogenic import mixed_inner_XXbar, norm_vec_X
from app.services.quadrature import QuadratureRule, basis_values, build_rule, gram
from app.utils.errors import ToleranceError

logger = logging.getLogger(__name__)

GRAM_FAMILIES = ("U", "X", "Y", "Z", "cross", "mixed")


def _relative(value: float, reference: float) -> float:
    if reference == 0.0:
        return abs(value)
    return abs(value - reference) / abs(reference)


def _random_points(domain: Domain, count: int, rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Puntos aleatorios lejos de la esfera unidad y del origen"""
    low, high = (0.1, 0.95) if domain is Domain.INTERIOR else (1.05, 3.0)
    rho = rng.uniform(low, high, count)
    t = rng.uniform(-1.0, 1.0, count)
    phi = rng.uniform(0.0, 2.0 * np.pi, count)
    return cartesian(rho, np.arccos(t), phi)


class ReportService:
    """
    Servicio de informes de verificación

    Funciones:
    1. norms: norma cerrada vs cuadratura (U, X, Vec X, Ytilde, Z)
    2. gram: ortogonalidad por bloques (U, X, Y/Ytilde, Z, Z frente a X y conj X, <conj X, X>)
    3. duality: residuo de la dualidad Z <-> Vec X en puntos aleatorios
    4. bergman_table: tablas de error de los proyectores truncados
    5. grid: muestras (theta, phi) para gráficas externas
    """

    def __init__(self, radial: Optional[int] = None, polar: Optional[int] = None, azimuthal: Optional[int] = None):
        self.sizes = (
            radial or settings.QUAD_RADIAL,
            polar or settings.QUAD_POLAR,
            azimuthal or settings.QUAD_AZIMUTHAL,
        )

    def rule(self, domain: Domain, max_degree: int) -> QuadratureRule:
        """Regla con los tamaños pedidos, ampliada si el grado lo exige"""
        needed = settings.rule_sizes_for(max_degree + 2)
        sizes = [max(a, b) for a, b in zip(self.sizes, needed)]
        return build_rule(domain, *sizes)

    # ============================================
    # FUNCIÓN 1: NORMAS
    # ============================================

    def norms(self, domain, max_degree: int) -> List[NormRow]:
        """Una fila por índice válido de cada familia con grado |n| <= max_degree"""
        domain = Domain(domain)
        rule = self.rule(domain, max_degree)
        rows: List[NormRow] = []
        entries: List[Tuple[str, BasisIndex, float, bool]] = []

        for family in (Family.U, Family.X, Family.Y_TILDE, Family.Z):
            for idx in indices_for(family, domain, degrees_for(family, domain, max_degree)):
                entries.append((family.value, idx, closed_norm(idx), False))
        for idx in indices_for(Family.X, domain, degrees_for(Family.X, domain, max_degree)):
            entries.append(("VecX", idx, norm_vec_X(idx), True))

        logger.info("Normas en %s hasta |n|=%d: %d índices, regla %s", domain.value, max_degree, len(entries), rule.sizes)
        values = basis_values([idx for _, idx, _, _ in entries], rule)
        for (family, idx, closed, vector_part), v in zip(entries, values):
            squares = np.sum(v[1:] ** 2, axis=0) if vector_part else np.sum(v ** 2, axis=0)
            quadrature = rule.integrate(squares)
            rows.append(NormRow(
                label=("Vec" if vector_part else "") + idx.label,
                family=family,
                domain=domain,
                n=idx.n,
                m=idx.m,
                parity=idx.parity.symbol,
                closed_form=closed,
                quadrature=quadrature,
                rel_deviation=_relative(quadrature, closed),
            ))
        return rows

    # ============================================
    # FUNCIÓN 2: MATRICES DE GRAM
    # ============================================

    def _block(self, family: str, domain: Domain, max_degree: int) -> Tuple[List[BasisIndex], List[BasisIndex]]:
        """(filas, columnas) del bloque pedido"""
        if family == "U":
            rows = indices_for(Family.U, domain, degrees_for(Family.U, domain, max_degree))
            return rows, rows
        if family == "X":
            rows = indices_for(Family.X, domain, degrees_for(Family.X, domain, max_degree))
            return rows, rows
        if family == "Y":
            degrees = degrees_for(Family.Y, domain, max_degree)
            rows = indices_for(Family.Y, domain, degrees) + indices_for(Family.Y_TILDE, domain, degrees)
            return rows, rows
        if family == "Z":
            rows = indices_for(Family.Z, domain, degrees_for(Family.Z, domain, max_degree))
            return rows, rows
        degrees = degrees_for(Family.X, domain, max_degree)
        xs = indices_for(Family.X, domain, degrees)
        xbars = indices_for(Family.X, domain, degrees, conjugate=True)
        if family == "cross":
            return indices_for(Family.Z, domain, degrees_for(Family.Z, domain, max_degree)), xs + xbars
        return xbars, xs

    def gram(self, family: str, domain, max_degree: int) -> GramReport:
        """
        Bloques simétricos (U, X, Y, Z): diagonal frente a la norma cerrada y
        cocientes |G_ij|/sqrt(G_ii G_jj) fuera de ella.
        cross: <Z, X> y <Z, conj X>, todos deben anularse.
        mixed: <conj X_i, X_j>; diagonal frente a la forma cerrada, resto nulo.
        """
        if family not in GRAM_FAMILIES:
            raise ValueError(f"Familia de Gram desconocida: {family}")
        domain = Domain(domain)
        rule = self.rule(domain, max_degree)
        rows_idx, cols_idx = self._block(family, domain, max_degree)
        matrix = gram(rows_idx + cols_idx if rows_idx is not cols_idx else rows_idx, rule).matrix
        k = len(rows_idx)
        if rows_idx is cols_idx:
            block, row_diag, col_diag = matrix, np.diag(matrix), np.diag(matrix)
        else:
            block = matrix[:k, k:]
            row_diag, col_diag = np.diag(matrix)[:k], np.diag(matrix)[k:]

        report_rows: List[GramRow] = []
        max_offdiag = 0.0
        max_diag = 0.0
        for i, ri in enumerate(rows_idx):
            for j, cj in enumerate(cols_idx):
                if rows_idx is cols_idx and j < i:
                    continue
                value = float(block[i, j])
                diagonal = self._is_diagonal(family, ri, cj)
                if diagonal:
                    expected = closed_norm(ri) if family != "mixed" else mixed_inner_XXbar(ri.conj(), cj)
                    ratio = _relative(value, expected) if family != "mixed" else abs(value - expected) / float(
                        np.sqrt(row_diag[i] * col_diag[j])
                    )
                    max_diag = max(max_diag, ratio)
                else:
                    expected = 0.0
                    ratio = abs(value) / float(np.sqrt(row_diag[i] * col_diag[j]))
                    max_offdiag = max(max_offdiag, ratio)
                report_rows.append(GramRow(row=ri.label, col=cj.label, value=value, expected=expected, ratio=ratio))

        logger.info("Gram %s en %s: offdiag %.3g, diag %.3g", family, domain.value, max_offdiag, max_diag)
        return GramReport(
            family=family,
            domain=domain,
            degrees=sorted({idx.n for idx in rows_idx + cols_idx}),
            size=len(rows_idx),
            max_offdiag_ratio=max_offdiag,
            max_diag_deviation=max_diag,
            rows=report_rows,
        )

    @staticmethod
    def _is_diagonal(family: str, row: BasisIndex, col: BasisIndex) -> bool:
        if family == "cross":
            return False
        if family == "mixed":
            return (row.n, row.m, row.parity) == (col.n, col.m, col.parity)
        return row == col

    # ============================================
    # FUNCIÓN 3: DUALIDAD
    # ============================================

    def duality(self, max_degree: int, points_per_index: int = 20, seed: int = 0) -> List[DualityRow]:
        """Todas las Z vectoriales con |n| <= max_degree, en ambos dominios"""
        rng = np.random.default_rng(seed)
        rows: List[DualityRow] = []
        for domain in (Domain.INTERIOR, Domain.EXTERIOR):
            for n in degrees_for(Family.Z, domain, max_degree):
                for m, parity in index_range(Family.Z, domain, n):
                    if is_scalar_contragenic(domain, n, m):
                        continue
                    points = _random_points(domain, points_per_index, rng)
                    residual, star_residual = duality_deviation(n, m, parity, *points)
                    rows.append(DualityRow(
                        label=BasisIndex.make("Z", n, m, parity, domain=domain).label,
                        n=n,
                        m=m,
                        parity=parity.symbol,
                        max_residual=residual,
                        star_residual=star_residual,
                    ))
        return rows

    # ============================================
    # FUNCIÓN 4: TABLAS DE BERGMAN
    # ============================================

    def bergman_table(self, domain, operator, target, truncations: Sequence[int], radii: Sequence[float]) -> BergmanTable:
        domain = Domain(domain)
        operator = Operator(operator)
        truncations = truncation_list(truncations)
        rule = self.rule(domain, KernelTruncation(domain, truncations[-1]).max_effective_degree)
        logger.info("Tabla B_%s en %s para N=%s, rho=%s", operator.value, domain.value, truncations, list(radii))
        return error_table(domain, operator, target, truncations, radii, rule)

    # ============================================
    # FUNCIÓN 5: MALLAS
    # ============================================

    def exp_grid(self, target, radii: Sequence[float]) -> List[GridSample]:
        """|Vec E| (o |Vec E*|) sobre esferas"""
        theta, phi, points = sphere_grid(radii)
        values = variant_field(target)(*points)
        return self._samples(radii, theta, phi, values, np.hypot(values[1], values[2]))

    def projection_grid(self, domain, target, truncations: Sequence[int], rho: float) -> Dict[int, List[GridSample]]:
        """|B_M[Vec f]| sobre la esfera rho para cada N"""
        domain = Domain(domain)
        truncations = truncation_list(truncations)
        trunc = KernelTruncation(domain, truncations[-1])
        projector = BergmanProjector(Operator.M, trunc, self.rule(domain, trunc.max_effective_degree))
        field = variant_field(target, vector_part=True)
        coefficients = projector.coefficients(field)
        theta, phi, points = sphere_grid([rho])
        parts = projector.contributions(coefficients, *points)
        out: Dict[int, List[GridSample]] = {}
        partial = np.zeros_like(parts[0])
        for position, part in enumerate(parts):
            partial = partial + part
            if position in truncations:
                values = np.concatenate([np.zeros((1,) + partial.shape[1:]), partial])
                out[position] = self._samples([rho], theta, phi, values, np.hypot(partial[0], partial[1]))
        return out

    @staticmethod
    def _samples(radii, theta, phi, values, magnitude) -> List[GridSample]:
        samples = []
        for r_i, rho in enumerate(radii):
            for i in range(theta.shape[1]):
                for k in range(theta.shape[2]):
                    samples.append(GridSample(
                        rho=float(rho),
                        theta=float(theta[r_i, i, k]),
                        phi=float(phi[r_i, i, k]),
                        c0=float(values[0][r_i, i, k]),
                        c1=float(values[1][r_i, i, k]),
                        c2=float(values[2][r_i, i, k]),
                        value=float(magnitude[r_i, i, k]),
                    ))
        return samples

    # ============================================
    # TOLERANCIA
    # ============================================

    @staticmethod
    def check_tolerance(what: str, max_deviation: float, tol: Optional[float]) -> None:
        """Lanza ToleranceError si la desviación máxima supera tol"""
        if tol is None:
            return
        if not np.isfinite(max_deviation) or max_deviation > tol:
            raise ToleranceError(f"{what}: desviación máxima {max_deviation:.3e} > {tol:.1e}", max_deviation, tol)
