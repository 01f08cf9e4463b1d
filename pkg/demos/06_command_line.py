"""A tour of the command-line interface (also available as ``shacycl`` or ``python -m shacycl``).

Run with:  python demos/06_command_line.py
"""
from shacycl.cli import main

commands = [
    ["group", "--group", "C4xC2"],
    ["cohomology", "--group", "C2", "--lattice", "trivial", "--degree", "2"],
    ["sha-cycl", "--group", "C2xC2", "--lattice", "multinorm:gens:1;gens:2;gens:3", "--certify"],
    ["sha-cycl", "--group", "C3xC3", "--lattice", "multinorm:gens:1;gens:4;gens:5;gens:3", "--json", "--no-timing"],
    ["verify", "--scenario", "p-plus-2", "--p", "2", "--n", "4"],
    ["paper-table", "--only", "1,2,3"],
]
for argv in commands:
    print("$ shacycl " + " ".join(f"'{a}'" if ";" in a else a for a in argv))
    code = main(argv)
    print(f"(exit {code})\n")
