# Printed expressions that disagree with the rest of the construction,
# with the numbers that settle each case.
from pneuma.typos import typo_report

for entry in typo_report():
    print(f"[{'confirmed' if entry['confirmed'] else 'NOT confirmed'}] {entry['name']}")
    print("   printed:    ", entry["printed"])
    print("   implemented:", entry["implemented"])
    if "printed_deviation" in entry:
        print(f"   {entry['check']}: printed {entry['printed_deviation']:.3g}, "
              f"implemented {entry['implemented_deviation']:.3g}")
    else:
        print("  ", entry["check"])
