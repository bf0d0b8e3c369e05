"""Walk the elimination pipeline for two quadric sections of G(2,5), step by step."""

from lgmirror import run_main_theorem
from lgmirror.periods import check_period_condition
from lgmirror.transform import ModelSpec


def main() -> None:
    trace = run_main_theorem(3, [2, 2])
    print("start:", trace.initial.variables.names)
    for step in trace.steps:
        print(f"\n{step.lemma} on rows from {step.block.first_row}:")
        print("  eliminated:", step.main_variable, " weight variable:", step.weight_variable)
        for name, value in sorted(step.bindings.items()):
            print(f"  {name} -> {value.to_text()}")
        print("  checks:", ", ".join(k for k, ok in step.checks.items() if ok))
    f = trace.result
    print(f"\nmirror: {len(f.terms)} terms in {len(f.used_variables())} variables")

    report = check_period_condition(ModelSpec.grassmannian(3, [2, 2]), n_terms=6)
    print("period: ", report.period.to_json_data())
    print("iseries:", report.iseries.to_json_data(), "->", report.verdict)


if __name__ == "__main__":
    main()
