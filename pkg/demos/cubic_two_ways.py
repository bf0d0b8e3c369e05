"""The cubic section of G(2,4) through the torus chart and through the quiver pipeline."""

from lgmirror import run_main_theorem
from lgmirror.appendix import a1_chain
from lgmirror.periods import main_period


def main() -> None:
    chain = a1_chain()
    for stage in ("psi", "phi1", "relabeled", "phi2"):
        print(f"{stage:>10}: {chain[stage].to_text()}")
    quiver_route = run_main_theorem(2, [3]).result
    print("\nquiver route:", quiver_route.to_text())
    print("identical:", chain["phi2"] == quiver_route)
    print("periods:", main_period(chain["psi"], 7).to_json_data(), main_period(quiver_route, 7).to_json_data())


if __name__ == "__main__":
    main()
