"""Regenerate the adder-pair contract documents from ``adders/config.json``.

    python3 scripts/export_fixtures.py
"""

from agcontracts.casestudies import fixtures
from agcontracts.casestudies.filters import configured_adders
from agcontracts.serialization import save_contract


def main():
    out = fixtures.data_dir() / "adders"
    for limited, suffix in ((False, "_nolimit"), (True, "_limited")):
        path = configured_adders(limited=limited)
        for c in path.input_contracts():
            name = c.outputs[0][: -len("_a")] + suffix
            save_contract(c, out / f"{name}.json", name)
    ops = configured_adders().operator_contracts()
    for i, c in enumerate(ops, 1):
        save_contract(c, out / f"adder{i}.json", f"adder{i}")
    save_contract(configured_adders().system_contract(), out / "expected_system.json", "system")
    print("wrote", sorted(p.name for p in out.glob("*.json")))


if __name__ == "__main__":
    main()
