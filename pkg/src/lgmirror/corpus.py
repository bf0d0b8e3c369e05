"""Worked examples with their known Laurent mirrors, written in factored form."""

from __future__ import annotations

from dataclasses import dataclass

from .exact import LaurentPolynomial, RationalFunction, parse_expression, require_laurent


@dataclass(frozen=True)
class ExampleRecord:
    id: str
    k: int
    degrees: tuple
    expected: str
    method: str = "main"
    description: str = ""
    partition: dict | None = None

    def expected_rational(self) -> RationalFunction:
        return parse_expression(self.expected)

    def expected_laurent(self) -> LaurentPolynomial:
        return require_laurent(self.expected_rational(), f"expected mirror of {self.id}")


EXAMPLES = [
    ExampleRecord("quadric-threefold", 2, (1,),
                  "a_1_2/a_1_1 + 1/a_2_1 + a_2_1/a_1_1 + 1/a_1_2 + a_1_1",
                  description="hyperplane section of G(2,4)"),
    ExampleRecord("G25-2H", 3, (1, 1),
                  "a_2_2/a_1_1 + a_2_2/a_2_1 + 1/a_3_1 + a_3_1/a_2_1 + 1/a_2_2 + a_2_1 + a_1_1",
                  description="two hyperplane sections of G(2,5)"),
    ExampleRecord("quadric-surface", 2, (1, 1),
                  "1/a_1_1 + 1/a_2_1 + a_2_1 + a_1_1",
                  description="two hyperplane sections of G(2,4)"),
    ExampleRecord("quadric-surface-2", 2, (1, 1),
                  "a_1_2 + a_2_1 + 1/a_1_2 + 1/a_2_1", method="single-arrow",
                  description="same surface through single-arrow eliminations"),
    ExampleRecord("degree-40", 3, (1, 1, 1),
                  "(a_3_1 + a_2_1)/(a_2_1*a_1_1) + 1/a_2_1 + 1/a_3_1 + a_3_1 + a_2_1 + a_1_1",
                  description="three hyperplane sections of G(2,5)"),
    ExampleRecord("X14-dim-4", 4, (1, 1, 1, 1),
                  "(a_4_1 + a_3_1)*(a_4_1 + a_3_1 + a_2_1)/(a_3_1*a_2_1*a_1_1) + (a_4_1 + a_3_1)/(a_3_1*a_2_1)"
                  " + 1/a_3_1 + 1/a_4_1 + a_4_1 + a_3_1 + a_2_1 + a_1_1",
                  description="four hyperplane sections of G(2,6)"),
    ExampleRecord("G27-index-2", 5, (1, 1, 1, 1, 1),
                  "(a_5_1 + a_4_1)*(a_5_1 + a_4_1 + a_3_1)*(a_5_1 + a_4_1 + a_3_1 + a_2_1)/(a_4_1*a_3_1*a_2_1*a_1_1)"
                  " + (a_5_1 + a_4_1)*(a_5_1 + a_4_1 + a_3_1)/(a_4_1*a_3_1*a_2_1) + (a_5_1 + a_4_1)/(a_4_1*a_3_1)"
                  " + 1/a_4_1 + 1/a_5_1 + a_5_1 + a_4_1 + a_3_1 + a_2_1 + a_1_1",
                  description="five hyperplane sections of G(2,7)"),
    ExampleRecord("S5", 3, (1, 1, 1, 1),
                  "(a_3_1*(1 + a_2_1)/a_2_1 + 1/a_2_1 + 1)*(1 + a_2_1 + 1/a_3_1)",
                  description="del Pezzo surface of degree 5"),
    ExampleRecord("V14", 4, (1, 1, 1, 1, 1),
                  "(a_4_1*(1 + a_3_1)*(1 + a_3_1 + a_2_1)/(a_3_1*a_2_1) + (1 + a_3_1)/(a_3_1*a_2_1) + 1/a_3_1 + 1)"
                  "*(1 + a_2_1 + a_3_1 + 1/a_4_1)",
                  description="Fano threefold of degree 14"),
    ExampleRecord("quadric-G24", 2, (2,),
                  "a_1_2 + 1/a_2_1 + (1/a_1_1)*(a_1_1 + a_2_1 + 1/a_1_2)^2",
                  description="quadric section of G(2,4)"),
    ExampleRecord("quadric-hyperplane-G24", 2, (2, 1),
                  "(a_1_1 + a_1_2)*(1 + 1/a_1_1 + 1/a_1_2)^2",
                  description="quadric and hyperplane section of G(2,4)"),
    ExampleRecord("cubic-G24", 2, (3,),
                  "(a_1_1/a_1_2)*(a_1_2 + (a_2_1^2 + a_1_1*a_2_1 + a_1_1 + a_2_1)/(a_1_1*a_2_1))^3",
                  description="cubic section of G(2,4)"),
    ExampleRecord("X10-dim-4", 3, (2, 1),
                  "a_1_2 + 1/a_2_1 + 1/a_3_1 + (1/a_1_1)*(a_1_1 + a_2_1 + a_3_1 + 1/a_1_2 + a_3_1/(a_1_2*a_2_1))^2",
                  description="Gushel-Mukai fourfold"),
    ExampleRecord("V10", 3, (2, 1, 1),
                  "((a_3_1 + a_1_2 + 1)/a_1_1)*(a_1_1 + 1/a_3_1 + 1 + 1/a_1_2 + a_3_1/a_1_2)^2",
                  description="Gushel-Mukai threefold"),
    ExampleRecord("X20-dim-4", 3, (2, 2),
                  "(1/a_1_1)*(a_1_1 + ((1 + a_2_2)/a_3_1 + a_2_2/a_1_2)*(a_3_1 + (1 + a_1_2*a_2_2 + a_2_2)/a_2_2)^2)^2",
                  description="two quadric sections of G(2,5)"),
    ExampleRecord("G26-dim-5", 4, (2, 2, 1),
                  "(a_1_1 + a_1_2 + a_3_2 + a_3_2/(a_2_1*a_3_1))"
                  "*(1 + (a_2_1 + a_3_2/(a_3_1*a_1_2))*(a_3_1 + 1/a_2_1 + 1/a_3_2 + 1/a_1_1)^2)^2",
                  description="fivefold in G(2,6) of index 1"),
]

EXAMPLES += [
    ExampleRecord("A.1", 2, (3,), "((y_2_2 + y_1_2)/(y_1_2*y_2_2*y_2_3))*(1 + y_1_2 + y_2_2 + y_2_3)^3",
                  method="appendix", description="cubic section of G(2,4) in a torus chart",
                  partition={"E": [3, 4], "Em": [[1, 2, 5, 6]], "sm": [1]}),
    ExampleRecord("A.2", 4, (1, 1, 1, 1),
                  "x_1_4 + x_2_4 + ((1 + y_2_2)*(1 + y_2_3)/(y_2_2*y_2_3*x_2_4))*(1 + y_2_2 + y_2_2*y_2_3)"
                  " + (1 + y_2_2)*(1 + y_2_3)/x_1_4",
                  method="appendix", description="four hyperplane sections of G(2,6) in a torus chart",
                  partition={"E": [5, 6, 7, 8], "Em": [[1], [12], [2, 9], [3, 10]], "sm": [1, 12, 2, 3]}),
]


def get_example(example_id: str) -> ExampleRecord:
    for e in EXAMPLES:
        if e.id == example_id:
            return e
    raise KeyError(f"unknown example {example_id!r}; known: {[e.id for e in EXAMPLES]}")


def regenerate(record: ExampleRecord) -> LaurentPolynomial:
    """Rebuild the mirror of ``record`` with its recorded method."""
    from .appendix import NefPartition, run_appendix
    from .transform import quadric_surface_single_arrow_route, run_main_theorem

    if record.method == "main":
        return run_main_theorem(record.k, record.degrees).result
    if record.method == "single-arrow":
        return quadric_surface_single_arrow_route()[1]
    if record.method == "appendix":
        partition = NefPartition.from_json(record.partition) if record.partition else None
        return run_appendix(record.k, record.degrees, partition).result
    raise ValueError(f"unknown method {record.method!r}")
