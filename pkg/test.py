# -*- coding: utf-8 -*-
"""qjoules"""

__copyright__ = "Copyright (c) 2026 qjoules contributors"

import contextlib
import dataclasses
import io
import json
import logging
import math
import os
import random
import tempfile
import unittest
from typing import Dict, List, Optional, Tuple

from qjoules import (
    Catalog,
    ClassicalOverheadSpec,
    CodeParams,
    CostMode,
    DecoderKind,
    DecoderTable,
    EnergyReport,
    EstimateOptions,
    FactoryProtocol,
    FactorySpec,
    FoldMode,
    GATE_CLASSES,
    GateCounts,
    InfeasibleError,
    Interpolation,
    LogicalCircuit,
    MaintenanceMode,
    NisqBreakdown,
    Platform,
    PowerSeries,
    PueProfile,
    QemStack,
    ReportFormat,
    ResourceError,
    SurfaceLayout,
    TechnologyProfile,
    UnknownGatePolicy,
    ValidationError,
    VqeSpec,
    backlogStall,
    builtinDecoderTable,
    builtinProfiles,
    classicalBreakdown,
    classicalEnergy,
    countGatesCircuitText,
    cycleEnergy,
    decoderEnergy,
    decoderLookup,
    effectiveGateEnergy,
    estimateNisqDuration,
    estimateWorkload,
    expandQem,
    ftqcExecEnergy,
    ftqcWallTime,
    gateEnergy,
    humanizeJoules,
    integratePower,
    loadDecoderTable,
    loadPowerSeries,
    loadWorkload,
    logicalErrorRate,
    m3AmortizedEnergy,
    magicStateEnergy,
    maintenanceEnergy,
    nisqExecEnergy,
    nisqPower,
    parseReport,
    parseSweepValues,
    parseWorkload,
    parseWorkloadObject,
    physicalQubitsPerLogical,
    renderReport,
    renderSweep,
    renderWorkload,
    requiredSpeedup,
    roundEnergy,
    roundingTolerance,
    runEstimate,
    runSweep,
    solveDistance,
    spacetimeVolume,
    totalEnergy,
    vqeBreakdown,
    vqeEnergy,
)
from qjoules.cli import main
from qjoules.document import Document
from qjoules.schema import Array, Integer, Mapping, Object, String


logging.getLogger("qjoules").addHandler(logging.NullHandler())

FIXTURES = os.path.join(os.path.dirname(os.path.abspath(__file__)), "fixtures")


def fixture(*parts: str) -> str:
    return os.path.join(FIXTURES, *parts)


def workload(name: str) -> str:
    return fixture("workloads", name + ".json")


def benchProfile(energies: Optional[Dict[str, float]] = None, **kwargs: float) -> TechnologyProfile:
    """a neutral profile; class energies default to 1 J"""
    return TechnologyProfile(
        key="bench",
        gateEnergy=energies if energies is not None else {c: 1.0 for c in GATE_CLASSES},
        gateNameToClass={
            "cx": "2q", "ecr": "2q", "rz": "1q", "h": "1q",
            "measure": "measure", "reset": "reset",
        },
        maintenancePowerWatts=kwargs.get("maintenance", 0.0),
        cycleTimeSeconds=1e-6,
    )


SUPERCONDUCTING = builtinProfiles()["superconducting"]
OBC_BASE = GateCounts({"ecr": 2404}, 100)
PBC_BASE = GateCounts({"ecr": 2540}, 100)
OBC_MEASURED = QemStack(
    (1, 3, 5), 10, 100000, FoldMode.MEASURED, measuredFoldCounts={1: 24040, 3: 49300, 5: 74560}
)
PBC_MEASURED = QemStack(
    (1, 3, 5), 10, 100000, FoldMode.MEASURED, measuredFoldCounts={1: 25400, 3: 49880, 5: 74360}
)


class Case(unittest.TestCase):
    def assertClose(self, actual: float, expected: float, rel: float = 1e-9) -> None:
        self.assertTrue(
            math.isclose(actual, expected, rel_tol=rel, abs_tol=1e-300),
            f"{actual!r} != {expected!r} (rel {rel})",
        )


class TestDocument(Case):
    document = Document({
        "name": "doc",
        "count": 3,
        "ratio": 0.5,
        "flag": True,
        "nisq": {"qem": {"zne_folds": [1, 3, 5], "shots": 10}},
    })

    def test_accessors(self) -> None:
        self.assertEqual(self.document.assertGet("name", str), "doc")
        self.assertEqual(self.document.assertGet("count", int), 3)
        self.assertRaises(ValidationError, self.document.assertGet, "count", str)
        self.assertRaises(ValidationError, self.document.assertGet, "missing", str)
        self.assertIsNone(self.document.optionalGet("count", str))
        self.assertEqual(self.document.ensure("missing", int, 7), 7)
        self.assertEqual(self.document.assertNumber("ratio"), 0.5)
        self.assertRaises(ValidationError, self.document.assertNumber, "flag")
        self.assertIsNone(self.document.optionalNumber("flag"))
        self.assertIsNone(self.document.section("missing"))
        section = self.document.section("nisq")
        assert section is not None
        self.assertIn("qem", section)

    def test_chain(self) -> None:
        chain = self.document.chain()
        self.assertEqual(chain.get("nisq.qem.zne_folds[1]"), 3)
        self.assertEqual(chain["nisq.qem.shots"], 10)
        self.assertIsNone(chain.get("nisq.missing.shots"))
        self.assertIsNone(chain.get("nisq.missing?.shots"))
        self.assertRaises(ValidationError, chain.resolve, "nisq.qem.pt_copies")
        self.assertRaises(ValidationError, chain.resolve, "nisq.qem.zne_folds[3]")

    def test_assign(self) -> None:
        copy = self.document.copy()
        copy.chain().assign("nisq.qem.zne_folds[2]", 7)
        self.assertEqual(copy.chain().get("nisq.qem.zne_folds"), [1, 3, 7])
        self.assertEqual(self.document.chain().get("nisq.qem.zne_folds"), [1, 3, 5])
        self.assertRaises(ValidationError, copy.chain().assign, "nisq.qem.new_key", 1)

    def test_syntax_error_position(self) -> None:
        with self.assertRaises(ValidationError) as ctx:
            Document.fromString('{\n  "name": "x",\n  "regime": \n}')
        self.assertIn("line 4", ctx.exception.message)
        self.assertEqual(ctx.exception.validation, "syntax")
        self.assertRaises(ValidationError, Document.fromString, "[1, 2]")

    def test_serialise(self) -> None:
        text = self.document.toString()
        self.assertEqual(Document.fromString(text), self.document)
        self.assertEqual(Document.fromString(text).toString(), text)

    def test_unreadable(self) -> None:
        with self.assertRaises(ResourceError) as ctx:
            Document.fromFile(fixture("does_not_exist.json"))
        self.assertEqual(ctx.exception.exitCode, 3)


class TestSchemas(Case):
    def test_schema_int(self) -> None:
        schema = Integer().min(0, False).max(10, False)
        self.assertEqual(schema.valid(1.0), False)
        self.assertEqual(schema.valid(True), False)

        self.assertEqual(schema.valid(0), False)
        self.assertEqual(schema.valid(1), True)
        self.assertEqual(schema.valid(9), True)
        self.assertEqual(schema.valid(10), False)

        odd = Integer().positive().odd()
        self.assertTrue(odd.valid(3))
        self.assertFalse(odd.valid(4))
        self.assertFalse(odd.valid(-1))

    def test_schema_string(self) -> None:
        schema = String().regex(r"^[a-z]+$")
        self.assertEqual(schema.valid("test"), True)
        self.assertEqual(schema.valid("test123"), False)
        self.assertFalse(String().nonEmpty().valid(""))
        self.assertFalse(String().enum("nisq", "ftqc").valid("annealing"))

    def test_schema_array(self) -> None:
        schema = Array(Integer()).min(1).strictlyIncreasing()
        self.assertTrue(schema.valid([1, 3, 5]))
        self.assertFalse(schema.valid([]))
        self.assertFalse(schema.valid([1, 1]))
        self.assertFalse(schema.valid([3, 1]))

    def test_schema_mapping(self) -> None:
        schema = Mapping(Integer().nonNegative(), String().regex(r"^[1-9][0-9]*$"))
        self.assertTrue(schema.valid({"1": 2, "15": 0}))
        self.assertFalse(schema.valid({"x": 2}))
        self.assertFalse(schema.valid({"1": -1}))

    def test_schema_optional(self) -> None:
        schema = Object(
            {
                "objectvalue": Object({"key": String().enum("value")}).optional(),
                "intvalue": Integer().optional().min(3),
            }
        )
        self.assertTrue(schema.valid({}))
        self.assertTrue(schema.valid({"objectvalue": None}))
        self.assertTrue(schema.valid({"objectvalue": {"key": "value"}, "intvalue": None}))
        self.assertFalse(schema.valid({"objectvalue": {"key": None}, "intvalue": 10}))
        self.assertFalse(schema.valid({"intvalue": 1}))
        self.assertFalse(schema.valid({"unexpected": 1}))

    def test_schema_default(self) -> None:
        schema = Integer().default(5)
        self.assertTrue(schema.valid(None))
        self.assertEqual(schema(None), 5)
        self.assertEqual(schema(6), 6)
        self.assertEqual(Object({"a": Integer().default(5)})({}), {"a": 5})
        self.assertEqual(Object({"m": Mapping(Integer()).default({})})({"m": None}), {"m": {}})

    def test_error_path(self) -> None:
        schema = Object({"qem": Object({"zne_folds": Array(Integer().odd())})})
        error = schema.error({"qem": {"zne_folds": [1, 2]}})
        assert error is not None
        self.assertEqual(error.path, ["qem", "zne_folds", "[1]"])
        self.assertEqual(error.formattedPath, "qem.zne_folds.[1]: odd")


class TestCircuit(Case):
    def test_bell_fixture(self) -> None:
        with open(fixture("circuits", "bell.qasm"), encoding="utf-8") as file:
            counts = countGatesCircuitText(file.read())
        self.assertEqual(dict(counts.counts), {"h": 1, "cx": 1, "measure": 2})
        self.assertEqual(counts.qubitCount, 2)
        self.assertEqual(counts.depth, 3)

    def test_empty_body(self) -> None:
        counts = countGatesCircuitText("OPENQASM 2.0;\n")
        self.assertEqual(counts.total, 0)
        self.assertEqual(counts.depth, 0)

    def test_unknown_gate_policy(self) -> None:
        text = "OPENQASM 2.0;\nqreg q[1];\nmygate q[0];\n"
        counts = countGatesCircuitText(text, UnknownGatePolicy.COUNT_AS_OTHER)
        self.assertEqual(dict(counts.counts), {"other": 1})
        with self.assertRaises(ValidationError) as ctx:
            countGatesCircuitText(text)
        self.assertIn("unknown gate", str(ctx.exception))

    def test_single_wire_depth(self) -> None:
        counts = countGatesCircuitText("OPENQASM 2.0;\nqreg q[1];\nh q[0]; x q[0];\nrz(0.5) q[0];\n")
        self.assertEqual(counts.total, 3)
        self.assertEqual(counts.depth, 3)

    def test_broadcast(self) -> None:
        counts = countGatesCircuitText("OPENQASM 2.0;\nqreg q[3];\nh q;\n")
        self.assertEqual(dict(counts.counts), {"h": 3})
        self.assertEqual(counts.depth, 1)

    def test_depth_bounded_by_total(self) -> None:
        rng = random.Random(11)
        for _ in range(25):
            lines = ["OPENQASM 2.0;", "qreg q[4];"]
            for _ in range(rng.randint(1, 30)):
                a, b = rng.sample(range(4), 2)
                lines.append(rng.choice([f"h q[{a}];", f"cx q[{a}],q[{b}];"]))
            counts = countGatesCircuitText("\n".join(lines))
            self.assertEqual(counts.total, len(lines) - 2)
            self.assertLessEqual(counts.depth, counts.total)

    def test_malformed(self) -> None:
        for text in (
            "qreg q[1];\nh q[0];\n",
            "OPENQASM 2.0;\nqreg q[1];\nh r[0];\n",
            "OPENQASM 2.0;\nqreg q[1];\nh q[1];\n",
            "OPENQASM 2.0;\nqreg q[2];\ncx q[0];\n",
            "OPENQASM 2.0;\nqreg q[1];\nh q[0]\n",
        ):
            self.assertRaises(ValidationError, countGatesCircuitText, text)

    def test_empty_register(self) -> None:
        for text in ("OPENQASM 2.0;\nqreg q[0];\nx q;\n", "OPENQASM 2.0;\ncreg c[0];\n"):
            with self.assertRaises(ValidationError) as ctx:
                countGatesCircuitText(text)
            self.assertIn("line 2: register", str(ctx.exception))

    def test_nested_parameters(self) -> None:
        counts = countGatesCircuitText(
            "OPENQASM 2.0;\nqreg q[2];\nrz(-(pi/4)) q[0];\nu3((pi/2), 0, -(pi)) q[1];\n"
        )
        self.assertEqual(dict(counts.counts), {"rz": 1, "u3": 1})
        self.assertEqual(counts.depth, 1)
        with self.assertRaises(ValidationError) as ctx:
            countGatesCircuitText("OPENQASM 2.0;\nqreg q[1];\nrz((pi/4) q[0];\n")
        self.assertIn("unbalanced parentheses", str(ctx.exception))

    def test_dd_insertions(self) -> None:
        merged = GateCounts({"cx": 2}, 2).merged({"x": 4, "cx": 1})
        self.assertEqual(dict(merged.counts), {"cx": 3, "x": 4})


class TestQem(Case):
    def test_partial_reproduces_measured_rows(self) -> None:
        obc = QemStack((1, 3, 5), 10, 100000, FoldMode.PARTIAL, foldedGateCount=1263)
        pbc = QemStack((1, 3, 5), 10, 100000, FoldMode.PARTIAL, foldedGateCount=1224)
        self.assertEqual(expandQem(OBC_BASE, obc), [(1, 24040), (3, 49300), (5, 74560)])
        self.assertEqual(expandQem(PBC_BASE, pbc), [(1, 25400), (3, 49880), (5, 74360)])

    def test_constant_second_difference(self) -> None:
        qem = QemStack((1, 3, 5, 7), 4, 1, FoldMode.PARTIAL, foldedGateCount=9)
        totals = [n for _, n in expandQem(GateCounts({"cx": 20}, 2), qem)]
        self.assertEqual([b - a for a, b in zip(totals, totals[1:])], [4 * 2 * 9] * 3)

    def test_global(self) -> None:
        qem = QemStack((1, 3, 5))
        self.assertEqual(expandQem(GateCounts({"cx": 7}, 2), qem), [(1, 7), (3, 21), (5, 35)])
        self.assertEqual(qem.multiplier, 9)

    def test_measured_is_verbatim(self) -> None:
        self.assertEqual(expandQem(OBC_BASE, OBC_MEASURED), [(1, 24040), (3, 49300), (5, 74560)])

    def test_invalid(self) -> None:
        self.assertRaises(ValidationError, QemStack, (1, 2))
        self.assertRaises(ValidationError, QemStack, (3, 1))
        self.assertRaises(ValidationError, QemStack, ())
        self.assertRaises(ValidationError, QemStack, (1,), 0)
        self.assertRaises(
            ValidationError, QemStack, (1, 3), 1, 1, FoldMode.MEASURED, None, {1: 10}
        )
        partial = QemStack((1, 3), foldMode=FoldMode.PARTIAL)
        self.assertRaises(ValidationError, expandQem, GateCounts({"cx": 5}, 2), partial)
        oversized = QemStack((1, 3), foldMode=FoldMode.PARTIAL, foldedGateCount=6)
        self.assertRaises(ValidationError, expandQem, GateCounts({"cx": 5}, 2), oversized)
        self.assertRaises(ValidationError, expandQem, GateCounts({}, 0), QemStack())


class TestHardware(Case):
    def test_builtin_profiles(self) -> None:
        profiles = builtinProfiles()
        self.assertEqual(profiles["superconducting"].gateEnergy["2q"], 0.18)
        self.assertEqual(profiles["trapped_ion"].gateEnergy["2q"], 15.0)
        self.assertEqual(SUPERCONDUCTING.decodeBudgetSeconds, 400e-9)
        self.assertEqual(SUPERCONDUCTING.cycleTimeSeconds, 1e-6)
        self.assertEqual(SUPERCONDUCTING.maintenancePowerWatts, 25e3)
        self.assertTrue(SUPERCONDUCTING.coolingIncludedInGateEnergy)
        self.assertEqual(SUPERCONDUCTING.classOf("ecr"), "2q")
        self.assertEqual(SUPERCONDUCTING.classOf("mygate"), "other")

    def test_decoder_table_values(self) -> None:
        table = builtinDecoderTable()
        b, m = DecoderKind.BPOSD, DecoderKind.MWPM
        expected = {
            (b, 7): (0.90, 0.27, 19.6e-9),
            (b, 11): (1.62, 0.28, 26.6e-9),
            (b, 13): (4.35, 0.36, 32.8e-9),
            (b, 32): (57.45, 2.49, 145.0e-9),
            (m, 7): (0.38, 0.19, 14.4e-9),
            (m, 11): (1.76, 0.92, 35.5e-9),
            (m, 13): (3.10, 1.62, 49.6e-9),
            (m, 32): (59.09, 30.33, 300.5e-9),
        }
        self.assertEqual(len(table.entries), 8)
        for (kind, d), values in expected.items():
            entry = decoderLookup(table, kind, d)
            self.assertEqual((entry.areaMm2, entry.powerWatts, entry.latencySeconds), values)

    def test_decoder_csv_matches_builtin(self) -> None:
        self.assertEqual(loadDecoderTable(fixture("decoders", "table2.csv")), builtinDecoderTable())

    def test_decoder_interpolation(self) -> None:
        entry = decoderLookup(builtinDecoderTable(), DecoderKind.BPOSD, 9)
        self.assertAlmostEqual(entry.areaMm2, 1.26, places=12)
        self.assertAlmostEqual(entry.powerWatts, 0.275, places=12)
        self.assertAlmostEqual(entry.latencySeconds * 1e9, 23.1, places=9)

    def test_interpolation_bounded(self) -> None:
        table = builtinDecoderTable()
        for kind, rows in table.rows.items():
            for lo, hi in zip(rows, rows[1:]):
                for d in range(lo.distance + 1, hi.distance):
                    entry = decoderLookup(table, kind, d)
                    for name in ("areaMm2", "powerWatts", "latencySeconds"):
                        a, b = getattr(lo, name), getattr(hi, name)
                        self.assertLessEqual(min(a, b), getattr(entry, name))
                        self.assertGreaterEqual(max(a, b), getattr(entry, name))

    def test_decoder_out_of_range(self) -> None:
        table = builtinDecoderTable()
        with self.assertRaises(InfeasibleError) as ctx:
            decoderLookup(table, DecoderKind.MWPM, 33)
        self.assertIn("extrapolation refused", str(ctx.exception))
        self.assertRaises(InfeasibleError, decoderLookup, table, DecoderKind.MWPM, 5)
        exact = table.withInterpolation(Interpolation.EXACT_ONLY)
        self.assertRaises(InfeasibleError, decoderLookup, exact, DecoderKind.BPOSD, 9)
        empty = DecoderTable(tuple(e for e in table.entries if e.decoder is DecoderKind.BPOSD))
        self.assertRaises(InfeasibleError, decoderLookup, empty, DecoderKind.MWPM, 11)

    def test_power_ratio_and_latency_budget(self) -> None:
        table = builtinDecoderTable()
        ratio = (
            decoderLookup(table, DecoderKind.MWPM, 32).powerWatts
            / decoderLookup(table, DecoderKind.BPOSD, 32).powerWatts
        )
        self.assertAlmostEqual(ratio, 12.18, delta=0.05)
        self.assertEqual(max(e.latencySeconds for e in table.entries), 300.5e-9)
        for entry in table.entries:
            self.assertEqual(backlogStall(entry.latencySeconds, SUPERCONDUCTING.decodeBudgetSeconds), 1.0)

    def test_catalog(self) -> None:
        catalog = Catalog()
        self.assertEqual(catalog.keys()[:2], ["superconducting", "trapped_ion"])
        profile = catalog.loadProfileFile(fixture("profiles", "lab_transmon.json"))
        self.assertIs(catalog.resolve("lab_transmon"), profile)
        self.assertFalse(catalog.isBuiltin("lab_transmon"))
        self.assertEqual(profile.maintenanceWattsPerQubit, 2.0)
        self.assertRaises(ValidationError, catalog.register, profile)
        self.assertRaises(ValidationError, catalog.register, SUPERCONDUCTING)
        with self.assertRaises(ValidationError) as ctx:
            catalog.resolve("photonic")
        self.assertEqual(ctx.exception.path, ["technology"])

    def test_invalid_profile_file(self) -> None:
        with tempfile.TemporaryDirectory() as folder:
            path = os.path.join(folder, "profile.json")
            with open(path, "w", encoding="utf-8") as file:
                json.dump({"key": "broken", "gate_energy": {"3q": 1.0},
                           "maintenance_power_watts": 0, "cycle_time_seconds": 1e-6}, file)
            self.assertRaises(ValidationError, Catalog().loadProfileFile, path)

    def test_superconducting_decode_budget(self) -> None:
        self.assertIs(SUPERCONDUCTING.platform, Platform.SUPERCONDUCTING)
        self.assertIs(builtinProfiles()["trapped_ion"].platform, Platform.TRAPPED_ION)
        atCap = dataclasses.replace(SUPERCONDUCTING, decodeBudgetSeconds=1e-3)
        self.assertEqual(atCap.decodeBudgetSeconds, 1e-3)
        with self.assertRaises(ValidationError) as ctx:
            dataclasses.replace(SUPERCONDUCTING, decodeBudgetSeconds=2e-3)
        self.assertEqual(ctx.exception.path, ["decode_budget_seconds"])
        slow = dataclasses.replace(benchProfile(), decodeBudgetSeconds=2e-3)
        self.assertIs(slow.platform, Platform.OTHER)

        lab = Catalog().loadProfileFile(fixture("profiles", "lab_transmon.json"))
        self.assertIs(lab.platform, Platform.SUPERCONDUCTING)
        with open(fixture("profiles", "lab_transmon.json"), encoding="utf-8") as file:
            data = json.load(file)
        data["decode_budget_seconds"] = 5e-3
        with tempfile.TemporaryDirectory() as folder:
            path = os.path.join(folder, "profile.json")
            with open(path, "w", encoding="utf-8") as file:
                json.dump(data, file)
            with self.assertRaises(ValidationError) as ctx:
                Catalog().loadProfileFile(path)
            self.assertEqual(ctx.exception.path, ["decode_budget_seconds"])


class TestNisq(Case):
    def test_gate_energy(self) -> None:
        profile = benchProfile({"2q": 0.18, "1q": 0.01})
        self.assertAlmostEqual(gateEnergy(GateCounts({"cx": 100, "rz": 200}, 2), profile), 20.0)
        self.assertEqual(gateEnergy(GateCounts({}, 0), profile), 0.0)
        trapped = builtinProfiles()["trapped_ion"]
        self.assertEqual(gateEnergy(GateCounts({"ms": 10}, 2), trapped), 150.0)
        self.assertRaises(InfeasibleError, gateEnergy, GateCounts({"mygate": 1}, 1), profile)

    def test_effective_gate_energy(self) -> None:
        self.assertEqual(effectiveGateEnergy(OBC_BASE, SUPERCONDUCTING), 0.18)
        mixed = benchProfile({"2q": 0.3, "1q": 0.1})
        self.assertAlmostEqual(effectiveGateEnergy(GateCounts({"cx": 1, "rz": 1}, 2), mixed), 0.2)

    def test_obc_and_pbc_exact(self) -> None:
        obc = nisqExecEnergy(OBC_BASE, OBC_MEASURED, SUPERCONDUCTING)
        self.assertEqual(obc.perFoldEnergyJoules, {1: 432720e3, 3: 887400e3, 5: 1342080e3})
        self.assertEqual(obc.totalExecJoules, 2662200e3)
        pbc = nisqExecEnergy(PBC_BASE, PBC_MEASURED, SUPERCONDUCTING)
        self.assertEqual(pbc.perFoldEnergyJoules, {1: 457200e3, 3: 897840e3, 5: 1338480e3})
        self.assertEqual(pbc.totalExecJoules, 2693520e3)
        self.assertEqual(list(obc.ledger()), ["fold_1", "fold_3", "fold_5", "m3_calibration"])
        self.assertEqual(obc.metrics()["fold_gate_totals"], {"1": 24040, "3": 49300, "5": 74560})

    def test_single_fold_collapses(self) -> None:
        breakdown = nisqExecEnergy(GateCounts({"cx": 10}, 2), QemStack(), benchProfile())
        self.assertEqual(breakdown.totalExecJoules, 10.0)
        self.assertEqual(breakdown.qemOverheadJoules, 0.0)

    def test_global_fold(self) -> None:
        qem = QemStack((1, 3, 5), 10, 1000)
        breakdown = nisqExecEnergy(GateCounts({"cx": 100}, 2), qem, SUPERCONDUCTING)
        self.assertClose(breakdown.totalExecJoules, 1.62e6)

    def test_linear_in_shots_and_copies(self) -> None:
        base = GateCounts({"cx": 37, "rz": 11}, 3)
        profile = benchProfile({"2q": 0.18, "1q": 0.013})
        once = nisqExecEnergy(base, QemStack((1, 3), 3, 500), profile).totalExecJoules
        twice = nisqExecEnergy(base, QemStack((1, 3), 3, 1000), profile).totalExecJoules
        copies = nisqExecEnergy(base, QemStack((1, 3), 6, 500), profile).totalExecJoules
        self.assertEqual(twice, 2 * once)
        self.assertEqual(copies, 2 * once)

    def test_unmitigated_consistency(self) -> None:
        base = GateCounts({"cx": 10}, 2)
        breakdown = nisqExecEnergy(base, QemStack(shots=250), SUPERCONDUCTING)
        self.assertClose(breakdown.totalExecJoules, 250 * gateEnergy(base, SUPERCONDUCTING))

    def test_m3(self) -> None:
        self.assertAlmostEqual(m3AmortizedEnergy(1000, 0.01, 100), 0.1)
        self.assertEqual(m3AmortizedEnergy(0, 123.0, 7), 0.0)
        self.assertAlmostEqual(m3AmortizedEnergy(10000, 0.18, 1), 1800.0)
        self.assertRaises(ValidationError, m3AmortizedEnergy, 10, 1.0, 0)
        qem = QemStack(shots=1, m3CalShots=1000, m3AmortizeOver=100)
        breakdown = nisqExecEnergy(GateCounts({"cx": 1}, 10), qem, SUPERCONDUCTING)
        self.assertAlmostEqual(breakdown.m3CalibrationJoules, 18.0)

    def test_vqe(self) -> None:
        spec = VqeSpec(50, 10, 10000, 100)
        self.assertEqual(vqeEnergy(spec, SUPERCONDUCTING), 9.0e7)
        self.assertEqual(vqeEnergy(spec, SUPERCONDUCTING, QemStack((1, 3, 5), 10)), 8.1e9)
        self.assertEqual(vqeEnergy(VqeSpec(50, 10, 10000, 0), SUPERCONDUCTING), 0.0)
        for doubled in (VqeSpec(100, 10, 10000, 100), VqeSpec(50, 20, 10000, 100),
                        VqeSpec(50, 10, 20000, 100), VqeSpec(50, 10, 10000, 200)):
            self.assertEqual(vqeEnergy(doubled, SUPERCONDUCTING), 1.8e8)
        self.assertRaises(ValidationError, VqeSpec, 0, 10, 10000, 100)
        calibrated = QemStack((1, 3, 5), 10, m3CalShots=1000)
        with self.assertRaises(ValidationError) as ctx:
            vqeBreakdown(spec, SUPERCONDUCTING, calibrated)
        self.assertEqual(ctx.exception.path, ["qem", "m3_cal_shots"])

    def test_power(self) -> None:
        self.assertAlmostEqual(nisqPower(2.6622e9, 991) / 1e6, 2.686, delta=2.686e-3)
        self.assertAlmostEqual(nisqPower(2.69352e9, 1004) / 1e6, 2.684, delta=2.684e-3)
        self.assertEqual(nisqPower(0.0, 10), 0.0)
        self.assertRaises(ValidationError, nisqPower, 1.0, 0)

    def test_duration_model(self) -> None:
        catalog = Catalog()
        lab = catalog.loadProfileFile(fixture("profiles", "lab_transmon.json"))
        base = GateCounts({"cz": 20, "h": 10, "measure": 2}, 2, 12)
        self.assertAlmostEqual(estimateNisqDuration(base, QemStack(shots=100), lab), 1.2)
        self.assertRaises(InfeasibleError, estimateNisqDuration, base, QemStack(), SUPERCONDUCTING)
        flat = GateCounts({"cz": 1}, 2)
        self.assertRaises(InfeasibleError, estimateNisqDuration, flat, QemStack(), lab)


class TestFtqc(Case):
    def test_logical_error_rate(self) -> None:
        self.assertClose(logicalErrorRate(1e-3, 1e-2, 25), 1e-13)
        self.assertClose(logicalErrorRate(1e-3, 1e-2, 11), 1e-6)
        self.assertEqual(logicalErrorRate(0.0, 1e-2, 11), 0.0)
        self.assertRaises(InfeasibleError, logicalErrorRate, 2e-2, 1e-2, 11)

    def test_solve_distance(self) -> None:
        self.assertEqual(solveDistance(1e-3, 1e-2, 1e-12), 23)
        pL = logicalErrorRate(1e-3, 1e-2, 23)
        self.assertTrue(pL <= 1e-12 or math.isclose(pL, 1e-12, rel_tol=roundingTolerance(23)))
        self.assertGreater(logicalErrorRate(1e-3, 1e-2, 21), 1e-12)
        self.assertEqual(solveDistance(1e-3, 1e-2, 1e-6), 11)
        self.assertEqual(solveDistance(1e-3, 1e-2, 1e-12, marginSteps=1), 25)
        self.assertEqual(solveDistance(1e-3, 1e-2, 0.5), 3)
        with self.assertRaises(InfeasibleError) as ctx:
            solveDistance(5e-3, 1e-3, 1e-12)
        self.assertIn("above threshold", str(ctx.exception))

    def test_solve_distance_properties(self) -> None:
        rng = random.Random(2026)
        for _ in range(200):
            p = rng.uniform(1e-5, 9e-3)
            target = 10 ** -rng.uniform(2, 15)
            prefactor = rng.uniform(0.03, 3.0)
            d = solveDistance(p, 1e-2, target, prefactor)
            self.assertEqual(d % 2, 1)

            def meets(distance: int) -> bool:
                pL = logicalErrorRate(p, 1e-2, distance, prefactor)
                tolerance = roundingTolerance(distance)
                return pL <= target or math.isclose(pL, target, rel_tol=tolerance)

            self.assertTrue(meets(d))
            if d > 3:
                self.assertFalse(meets(d - 2))
            self.assertLessEqual(solveDistance(p, 1e-2, target * 10, prefactor), d)
            self.assertGreaterEqual(solveDistance(min(p * 1.1, 9.9e-3), 1e-2, target, prefactor), d)

    def test_solve_distance_just_below_target(self) -> None:
        for k in range(2, 15):
            exact = solveDistance(1e-3, 1e-2, 10.0 ** -k)
            self.assertEqual(exact, 2 * k - 1)
            target = 10.0 ** -k * (1 - 1e-10)
            d = solveDistance(1e-3, 1e-2, target)
            self.assertEqual(d, exact + 2)
            self.assertLessEqual(logicalErrorRate(1e-3, 1e-2, d), target)
            self.assertGreater(logicalErrorRate(1e-3, 1e-2, d - 2), target)

    def test_physical_qubits(self) -> None:
        self.assertEqual(physicalQubitsPerLogical(25), 1249)
        self.assertTrue(1e3 <= physicalQubitsPerLogical(25) <= 2e3)
        self.assertEqual(physicalQubitsPerLogical(1), 1)
        self.assertEqual(physicalQubitsPerLogical(3), 17)
        sizes = [physicalQubitsPerLogical(d) for d in range(1, 40, 2)]
        self.assertEqual(sizes, sorted(set(sizes)))
        self.assertRaises(ValidationError, physicalQubitsPerLogical, 4)

    def test_spacetime_volume(self) -> None:
        self.assertEqual(spacetimeVolume(LogicalCircuit(10, 0, 1, 100), 0.5), 1500)
        self.assertEqual(spacetimeVolume(LogicalCircuit(1, 0, 1, 1), 0.0), 1)
        self.assertEqual(spacetimeVolume(LogicalCircuit(10, 0, 1, 100, 9999), 0.5), 9999)
        self.assertEqual(spacetimeVolume(LogicalCircuit(10, 0, 1, 1), 0.1), 11)
        self.assertRaises(ValidationError, LogicalCircuit, 10, 0, 0, 100)
        self.assertRaises(ValidationError, LogicalCircuit, 10, 1, 0, 100, 5)

    def test_cycle_energy(self) -> None:
        uniform = benchProfile({c: 0.18 for c in GATE_CLASSES})
        self.assertAlmostEqual(roundEnergy(3, uniform), 8.64)
        self.assertAlmostEqual(cycleEnergy(3, uniform), 25.92)
        self.assertEqual(cycleEnergy(3, benchProfile({c: 0.0 for c in GATE_CLASSES})), 0.0)
        self.assertEqual(cycleEnergy(3, uniform, 1.0), 1.0)

    def test_magic_state_energy(self) -> None:
        distillation = FactorySpec()
        cultivation = FactorySpec(FactoryProtocol.CULTIVATION)
        self.assertEqual(magicStateEnergy(distillation, 1.0, SUPERCONDUCTING), 3162.0)
        self.assertTrue(1e3 <= magicStateEnergy(distillation, 1.0, SUPERCONDUCTING) <= 1e4)
        self.assertEqual(distillation.ratio / 10, cultivation.ratio)
        self.assertEqual(distillation.patchCycles / 10, cultivation.patchCycles)
        self.assertEqual(magicStateEnergy(cultivation, 1.0, SUPERCONDUCTING), 316.2)
        patch = dataclasses.replace(distillation, costMode=CostMode.PATCH_CYCLES)
        patchCultivation = dataclasses.replace(cultivation, costMode=CostMode.PATCH_CYCLES)
        self.assertClose(
            magicStateEnergy(patchCultivation, 1.0, SUPERCONDUCTING),
            magicStateEnergy(patch, 1.0, SUPERCONDUCTING) / 10,
            1e-15,
        )
        zero = benchProfile({c: 0.0 for c in GATE_CLASSES})
        self.assertEqual(magicStateEnergy(patch, 1.0, zero), 0.0)
        custom = FactorySpec(ratioToCycle=1000.0)
        self.assertFalse(custom.usesDefaultCost)
        self.assertEqual(magicStateEnergy(custom, 2.0, SUPERCONDUCTING), 2000.0)
        self.assertRaises(ValidationError, FactorySpec, distance=14)

    def test_decoder_energy(self) -> None:
        table = builtinDecoderTable()
        layout = SurfaceLayout(11, 241, 10, 0.0)
        bposd = decoderLookup(table, DecoderKind.BPOSD, 11)
        self.assertAlmostEqual(decoderEnergy(layout, bposd, 1.0), 2.8)
        self.assertEqual(decoderEnergy(layout, bposd, 0.0), 0.0)
        single = SurfaceLayout(32, 2047, 1, 0.0)
        mwpm = decoderLookup(table, DecoderKind.MWPM, 32)
        self.assertAlmostEqual(decoderEnergy(single, mwpm, 1.0), 30.33)
        ratio = decoderEnergy(single, mwpm, 1.0) / decoderEnergy(
            single, decoderLookup(table, DecoderKind.BPOSD, 32), 1.0
        )
        self.assertAlmostEqual(ratio, 12.18, delta=0.05)

    def test_stall_and_wall_time(self) -> None:
        self.assertEqual(backlogStall(300.5e-9, 400e-9), 1.0)
        self.assertEqual(backlogStall(800e-9, 400e-9), 2.0)
        self.assertEqual(backlogStall(26.6e-9, 400e-9), 1.0)
        self.assertRaises(ValidationError, backlogStall, 0.0, 400e-9)
        self.assertAlmostEqual(ftqcWallTime(100, 25, 1e-6, 1.0), 2.5e-3)
        self.assertAlmostEqual(ftqcWallTime(100, 25, 1e-6, 2.0), 5.0e-3)
        self.assertEqual(ftqcWallTime(0, 25, 1e-6, 1.0), 0.0)

    def test_exec_energy_ledger(self) -> None:
        config = loadWorkload(workload("ftqc_distillation")).ftqc
        assert config is not None
        breakdown = ftqcExecEnergy(config, SUPERCONDUCTING, builtinDecoderTable())
        self.assertEqual(breakdown.d, 11)
        self.assertEqual(breakdown.layout.nPatches, 15)
        self.assertEqual(breakdown.physicalQubits, 15 * 241)
        self.assertEqual(breakdown.vLsCells, 1500)
        self.assertClose(breakdown.eCycJoules, 1425.6)
        self.assertEqual(breakdown.stallFactor, 1.0)
        self.assertClose(breakdown.wallSeconds, 1.1e-3)
        self.assertClose(breakdown.totalExecJoules, math.fsum(breakdown.ledger().values()), 1e-12)
        self.assertClose(breakdown.eMsJoules / breakdown.eCycJoules, 3162.0)

    def test_measured_wall_time(self) -> None:
        config = loadWorkload(workload("ftqc_distillation")).ftqc
        assert config is not None
        modelled = ftqcExecEnergy(config, SUPERCONDUCTING, builtinDecoderTable())
        measured = ftqcExecEnergy(config, SUPERCONDUCTING, builtinDecoderTable(), 2.0)
        self.assertEqual(measured.wallSeconds, 2.0)
        self.assertClose(measured.eDecJoules, 15 * 0.28 * 2.0)
        self.assertClose(measured.eDecJoules / modelled.eDecJoules, 2.0 / 1.1e-3)
        self.assertEqual(measured.latticeEnergyJoules, modelled.latticeEnergyJoules)
        self.assertEqual(measured.magicEnergyJoules, modelled.magicEnergyJoules)

    def test_clifford_only(self) -> None:
        config = loadWorkload(workload("ftqc_clifford_only")).ftqc
        assert config is not None
        breakdown = ftqcExecEnergy(config, SUPERCONDUCTING, builtinDecoderTable())
        self.assertEqual(breakdown.magicEnergyJoules, 0.0)
        self.assertEqual(
            breakdown.totalExecJoules, breakdown.latticeEnergyJoules + breakdown.eDecJoules
        )

    def test_cycle_override(self) -> None:
        config = loadWorkload(workload("ftqc_override")).ftqc
        assert config is not None
        breakdown = ftqcExecEnergy(config, SUPERCONDUCTING, builtinDecoderTable())
        self.assertEqual(breakdown.latticeEnergyJoules, 1500.0)
        self.assertEqual(breakdown.magicEnergyJoules, 316200.0)
        self.assertClose(breakdown.totalExecJoules, 1500 + 316200 + breakdown.eDecJoules, 1e-12)

    def test_compiled_volume_and_margin(self) -> None:
        config = loadWorkload(workload("ftqc_compiled")).ftqc
        assert config is not None
        breakdown = ftqcExecEnergy(config, SUPERCONDUCTING, builtinDecoderTable())
        self.assertEqual(breakdown.d, 25)
        self.assertEqual(breakdown.layout.physicalQubitsPerPatch, 1249)
        self.assertEqual(breakdown.layout.nPatches, 30)
        self.assertEqual(breakdown.vLsCells, 9999)
        self.assertClose(breakdown.eMsJoules, 810 * roundEnergy(15, SUPERCONDUCTING))

    def test_above_threshold(self) -> None:
        config = loadWorkload(workload("above_threshold")).ftqc
        assert config is not None
        with self.assertRaises(InfeasibleError) as ctx:
            ftqcExecEnergy(config, SUPERCONDUCTING, builtinDecoderTable())
        self.assertIn("above threshold", str(ctx.exception))
        self.assertEqual(ctx.exception.exitCode, 2)

    def test_slow_decoder_stalls(self) -> None:
        config = loadWorkload(workload("ftqc_distillation")).ftqc
        assert config is not None
        tight = dataclasses.replace(SUPERCONDUCTING, decodeBudgetSeconds=10e-9)
        with self.assertLogs("qjoules.ftqc", level="WARNING"):
            breakdown = ftqcExecEnergy(config, tight, builtinDecoderTable())
        self.assertClose(breakdown.stallFactor, 2.66)
        self.assertClose(breakdown.wallSeconds, 100 * 11 * 1e-6 * 2.66)

    def test_magic_crossover(self) -> None:
        config = loadWorkload(workload("ftqc_distillation")).ftqc
        assert config is not None
        dominant: List[str] = []
        for tCount in (0, 1, 10, 100, 1000, 10 ** 6):
            logical = dataclasses.replace(config.logical, tCount=tCount)
            breakdown = ftqcExecEnergy(
                dataclasses.replace(config, logical=logical), SUPERCONDUCTING, builtinDecoderTable()
            )
            ledger = breakdown.ledger()
            dominant.append(max(ledger, key=lambda key: ledger[key]))
        self.assertEqual(dominant[0], "lattice")
        self.assertEqual(dominant[-1], "magic")
        first = dominant.index("magic")
        self.assertTrue(all(term == "magic" for term in dominant[first:]))


class TestOverhead(Case):
    ramp = PowerSeries("cpu", ((0, 100), (5, 200), (15, 100)))

    def test_integrate(self) -> None:
        self.assertEqual(integratePower(PowerSeries("a", ((0, 100), (10, 100)))), 1000.0)
        self.assertEqual(integratePower(PowerSeries("a", ((0, 0), (10, 100)))), 500.0)
        self.assertEqual(integratePower(self.ramp), 2250.0)
        self.assertEqual(integratePower(self.ramp, (0, 5)), 750.0)
        self.assertEqual(integratePower(PowerSeries("a", ((3, 5),))), 0.0)

    def test_integrate_additive_and_refinable(self) -> None:
        self.assertClose(
            integratePower(self.ramp, (0, 7)) + integratePower(self.ramp, (7, 15)), 2250.0
        )
        coarse = PowerSeries("a", ((0, 0), (10, 100)))
        fine = PowerSeries("a", ((0, 0), (2.5, 25), (5, 50), (7.5, 75), (10, 100)))
        self.assertClose(integratePower(fine), integratePower(coarse))

    def test_integrate_invalid(self) -> None:
        self.assertRaises(ValidationError, integratePower, self.ramp, (0, 16))
        self.assertRaises(ValidationError, integratePower, self.ramp, (5, 2))
        self.assertRaises(ValidationError, integratePower, PowerSeries("a", ((3, 5),)), (3, 4))
        self.assertRaises(ValidationError, PowerSeries, "a", ((1, 5), (1, 6)))
        self.assertRaises(ValidationError, PowerSeries, "a", ((0, -5),))
        self.assertRaises(ValidationError, PueProfile, ((1, 1.2),))
        self.assertRaises(ValidationError, PueProfile, ((0, 0.9),))

    def test_classical_energy(self) -> None:
        flat = PowerSeries("node", ((0, 100), (10, 100)))
        spec = ClassicalOverheadSpec((flat,), PueProfile(((0, 1.5),)), 100, 50, 25)
        self.assertEqual(classicalEnergy(spec), 1675.0)

        split = ClassicalOverheadSpec(
            (PowerSeries("node", ((0, 100), (20, 100))),), PueProfile(((0, 1.0), (10, 2.0)))
        )
        self.assertEqual(classicalEnergy(split), 3000.0)
        self.assertEqual(classicalBreakdown(split).itJoulesBySeries, {"node": 2000.0})

        self.assertEqual(classicalEnergy(ClassicalOverheadSpec((), PueProfile(), 10, 20, 30)), 60.0)
        self.assertRaises(ValidationError, ClassicalOverheadSpec, (), PueProfile(), -1.0)

    def test_classical_energy_monotone(self) -> None:
        rng = random.Random(42)
        for _ in range(100):
            series = []
            for label in ("cpu", "gpu")[: rng.randint(1, 2)]:
                times = sorted(rng.sample(range(0, 100), rng.randint(2, 6)))
                series.append(PowerSeries(label, tuple((t, rng.uniform(0, 500)) for t in times)))
            starts = [0] + sorted(rng.sample(range(1, 100), rng.randint(0, 3)))
            pue = PueProfile(tuple((t, rng.uniform(1.0, 2.5)) for t in starts))
            spec = ClassicalOverheadSpec(
                tuple(series), pue, rng.uniform(0, 50), rng.uniform(0, 50), rng.uniform(0, 50)
            )
            base = classicalEnergy(spec)

            index = rng.randrange(len(pue.intervals))
            bumped = list(pue.intervals)
            bumped[index] = (bumped[index][0], bumped[index][1] + 0.5)
            higherPue = dataclasses.replace(spec, pue=PueProfile(tuple(bumped)))
            self.assertGreaterEqual(classicalEnergy(higherPue), base * (1 - 1e-12))
            for name in ("sharedJoules", "netWanJoules", "storageJoules"):
                bigger = dataclasses.replace(spec, **{name: getattr(spec, name) + 10})
                self.assertGreater(classicalEnergy(bigger), base)

    def test_counter_file(self) -> None:
        series = loadPowerSeries(fixture("counters", "node_power.csv"))
        self.assertEqual([s.label for s in series], ["cpu", "gpu"])
        self.assertEqual([integratePower(s) for s in series], [2250.0, 500.0])

    def test_maintenance(self) -> None:
        charge = maintenanceEnergy(SUPERCONDUCTING, 991)
        self.assertEqual(charge.joules, 24.775e6)
        self.assertTrue(charge.coolingDoubleCounted)
        self.assertEqual(maintenanceEnergy(benchProfile(), 991).joules, 0.0)
        self.assertEqual(maintenanceEnergy(benchProfile(maintenance=1e6), 3600).joules, 3.6e9)
        self.assertRaises(ValidationError, maintenanceEnergy, SUPERCONDUCTING, -1)
        lab = Catalog().loadProfileFile(fixture("profiles", "lab_transmon.json"))
        scaled = maintenanceEnergy(lab, 10, physicalQubits=500)
        self.assertEqual(scaled.joules, (5000 + 2.0 * 500) * 10)
        self.assertFalse(scaled.coolingDoubleCounted)

    def test_total_energy(self) -> None:
        three = NisqBreakdown({1: 3.0}, {1: 3}, 3.0, 0.0, 1)
        report = totalEnergy(1.0, 2.0, nisq=three)
        self.assertEqual(report.eTot, 6.0)
        self.assertEqual(report.regime, "nisq")
        self.assertEqual(math.fsum(report.items.values()), report.eTot)
        self.assertRaises(ValidationError, totalEnergy, 1.0, 2.0)

        ftqcConfig = loadWorkload(workload("ftqc_distillation")).ftqc
        assert ftqcConfig is not None
        ftqc = ftqcExecEnergy(ftqcConfig, SUPERCONDUCTING, builtinDecoderTable())
        self.assertRaises(ValidationError, totalEnergy, 1.0, 2.0, three, ftqc)
        self.assertEqual(list(totalEnergy(0.0, 0.0, ftqc=ftqc).items),
                         ["system", "classical", "lattice", "magic", "decoder"])

    def test_obc_dominated_by_execution(self) -> None:
        obc = nisqExecEnergy(OBC_BASE, OBC_MEASURED, SUPERCONDUCTING)
        report = totalEnergy(maintenanceEnergy(SUPERCONDUCTING, 991).joules, 0.0, nisq=obc)
        self.assertEqual(report.eTot, 2686975e3)
        self.assertEqual(humanizeJoules(report.eTot), "2.687 GJ")
        self.assertGreater(report.execFraction, 0.99)

    def test_required_speedup(self) -> None:
        self.assertEqual(requiredSpeedup(25e3, 250), 100.0)
        self.assertEqual(requiredSpeedup(1e3, 1e3), 1.0)
        self.assertEqual(requiredSpeedup(10e3, 100), 100.0)
        self.assertRaises(ValidationError, requiredSpeedup, 0, 100)


class TestWorkload(Case):
    def test_minimal(self) -> None:
        spec = loadWorkload(workload("minimal_nisq"))
        assert spec.nisq is not None and spec.nisq.qem is not None
        self.assertEqual(spec.technology, "superconducting")
        self.assertIsNone(spec.qpuSeconds)
        self.assertEqual(spec.nisq.baseCounts(), GateCounts({"cx": 10}, 2))
        self.assertEqual(spec.nisq.qem, QemStack((1,), 1, 1))

    def test_regime_mismatch(self) -> None:
        data = Document.fromFile(workload("minimal_nisq")).toDict()
        data["regime"] = "ftqc"
        with self.assertRaises(ValidationError) as ctx:
            parseWorkloadObject(data)
        self.assertIn("regime/payload mismatch", str(ctx.exception))
        self.assertEqual(ctx.exception.path, ["regime"])

    def test_schema_errors(self) -> None:
        with self.assertRaises(ValidationError) as ctx:
            parseWorkloadObject({"name": "x", "regime": "nisq"})
        self.assertEqual(ctx.exception.formattedPath, "technology: required")

        data = Document.fromFile(workload("obc")).toDict()
        data["nisq"]["qem"]["zne_folds"] = [1, 2]
        with self.assertRaises(ValidationError) as ctx:
            parseWorkloadObject(data)
        self.assertEqual(ctx.exception.path, ["nisq", "qem", "zne_folds", "[1]"])

        data = Document.fromFile(workload("obc")).toDict()
        data["nisq"]["gate_counts"]["counts"]["ecr"] = 2404.0
        self.assertRaises(ValidationError, parseWorkloadObject, data)

        data = Document.fromFile(workload("obc")).toDict()
        data["nisq"]["qem"]["measured_fold_counts"] = {"x": 1}
        self.assertRaises(ValidationError, parseWorkloadObject, data)

        data = Document.fromFile(workload("obc")).toDict()
        data["nisq"]["vqe"] = {"ansatz_two_qubit_gates": 1, "pauli_groups": 1,
                               "shots_per_circuit": 1, "iterations": 1}
        self.assertRaises(ValidationError, parseWorkloadObject, data)

        data = Document.fromFile(workload("vqe_qem")).toDict()
        data["nisq"]["qem"]["m3_cal_shots"] = 1000
        with self.assertRaises(ValidationError) as ctx:
            parseWorkloadObject(data)
        self.assertEqual(ctx.exception.path, ["nisq", "qem", "m3_cal_shots"])

        data = Document.fromFile(workload("obc")).toDict()
        del data["nisq"]["qem"]
        with self.assertRaises(ValidationError) as ctx:
            parseWorkloadObject(data)
        self.assertEqual(ctx.exception.path, ["nisq", "qem"])

    def test_syntax_error(self) -> None:
        with self.assertRaises(ValidationError) as ctx:
            parseWorkload('{"name": "x",\n "regime": nisq}')
        self.assertIn("line 2", str(ctx.exception))

    def test_unknown_technology_is_deferred(self) -> None:
        data = Document.fromFile(workload("minimal_nisq")).toDict()
        data["technology"] = "photonic"
        spec = parseWorkloadObject(data)
        with self.assertRaises(ValidationError) as ctx:
            estimateWorkload(spec)
        self.assertEqual(ctx.exception.path, ["technology"])

    def test_round_trip_corpus(self) -> None:
        names = sorted(os.listdir(fixture("workloads")))
        self.assertGreaterEqual(len(names), 10)
        for name in names:
            with self.subTest(name=name):
                spec = loadWorkload(fixture("workloads", name))
                text = renderWorkload(spec)
                self.assertEqual(parseWorkload(text), spec)
                self.assertEqual(renderWorkload(parseWorkload(text)), text)

    def test_circuit_file(self) -> None:
        spec = loadWorkload(workload("circuit_file"))
        assert spec.nisq is not None
        counts = spec.nisq.baseCounts(fixture("workloads"))
        self.assertEqual(dict(counts.counts), {"h": 1, "cx": 1, "measure": 2, "x": 4})
        self.assertRaises(ResourceError, spec.nisq.baseCounts, fixture("workloads", "nested"))


class TestReport(Case):
    def obcReport(self, mode: MaintenanceMode = MaintenanceMode.FLAG) -> EnergyReport:
        with self.assertLogs("qjoules.estimate", level="WARNING"):
            return runEstimate(workload("obc"), EstimateOptions(maintenance=mode))

    def test_humanize(self) -> None:
        self.assertEqual(humanizeJoules(2662200000.0), "2.662 GJ")
        self.assertEqual(humanizeJoules(12.5e6), "12.5 MJ")
        self.assertEqual(humanizeJoules(12.5), "12.5 J")

    def test_obc_table(self) -> None:
        table = renderReport(self.obcReport())
        for cell in ("24,040", "432,720", "887,400", "1,342,080", "2,662,200", "2.686"):
            self.assertIn(cell, table)
        self.assertIn("Total Energy (kJ)", table)
        self.assertIn("note: maintenance", table)

    def test_ftqc_table(self) -> None:
        with self.assertLogs("qjoules.estimate", level="WARNING"):
            report = runEstimate(workload("ftqc_distillation"))
        table = renderReport(report, ReportFormat.TABLE)
        lines = table.splitlines()
        self.assertEqual(
            [line.split()[0] for line in lines if line.split()[0] in ("lattice", "magic", "decoder")],
            ["lattice", "magic", "decoder"],
        )
        self.assertIn("default distillation ratio", table)

    def test_machine_round_trip(self) -> None:
        for report in (self.obcReport(), self.obcReport(MaintenanceMode.INCLUDE)):
            text = renderReport(report, ReportFormat.MACHINE)
            self.assertEqual(parseReport(text), report)
            self.assertEqual(renderReport(parseReport(text), ReportFormat.MACHINE), text)
            self.assertEqual(list(json.loads(text)), [
                "name", "regime", "items", "e_tot_joules", "power_watts", "duration_seconds",
                "dominant_term", "advisories", "metrics", "inputs",
            ])

    def test_machine_deterministic(self) -> None:
        first = renderReport(self.obcReport(), ReportFormat.MACHINE)
        second = renderReport(self.obcReport(), ReportFormat.MACHINE)
        self.assertEqual(first, second)

    def test_parse_invalid(self) -> None:
        with self.assertRaises(ValidationError) as ctx:
            parseReport('{"name": "x"}')
        self.assertIn("not a qjoules report", str(ctx.exception))

    def test_dominant_term_ties(self) -> None:
        report = EnergyReport("t", "nisq", {"system": 1.0, "fold_1": 2.0, "fold_3": 2.0}, 5.0)
        self.assertEqual(report.dominantTerm(), "fold_1")


class TestEstimate(Case):
    def run_(self, name: str, options: Optional[EstimateOptions] = None) -> EnergyReport:
        with self.assertLogs("qjoules", level="WARNING"):
            return runEstimate(workload(name), options)

    def test_obc(self) -> None:
        report = self.run_("obc")
        self.assertEqual(
            [report.items[k] for k in ("fold_1", "fold_3", "fold_5")],
            [432720e3, 887400e3, 1342080e3],
        )
        self.assertEqual(report.items["system"], 0.0)
        self.assertEqual(report.eTot, 2662200e3)
        assert report.powerWatts is not None
        self.assertAlmostEqual(report.powerWatts / 1e6, 2.686, delta=2.686e-3)
        self.assertEqual(report.metrics["maintenance_joules_computed"], 24.775e6)
        self.assertEqual(len(report.advisories), 1)
        self.assertIn("not added", report.advisories[0])

    def test_pbc(self) -> None:
        report = self.run_("pbc")
        self.assertEqual(report.eTot, 2693520e3)
        assert report.powerWatts is not None
        self.assertAlmostEqual(report.powerWatts / 1e6, 2.684, delta=2.684e-3)

    def test_partial_matches_measured(self) -> None:
        for partial, measured in (("obc_partial", "obc"), ("pbc_partial", "pbc")):
            self.assertEqual(self.run_(partial).items, self.run_(measured).items)

    def test_maintenance_modes(self) -> None:
        included = self.run_("obc", EstimateOptions(maintenance=MaintenanceMode.INCLUDE))
        self.assertEqual(included.items["system"], 24.775e6)
        self.assertGreater(included.execFraction, 0.99)
        self.assertIn("double count", included.advisories[0])

        excluded = runEstimate(workload("obc"), EstimateOptions(maintenance=MaintenanceMode.EXCLUDE))
        self.assertEqual(excluded.items["system"], 0.0)
        self.assertEqual(excluded.advisories, [])

    def test_no_wall_time(self) -> None:
        report = self.run_("minimal_nisq")
        self.assertIsNone(report.powerWatts)
        self.assertIsNone(report.durationSeconds)
        self.assertAlmostEqual(report.eTot, 1.8)
        self.assertIn("no wall time", report.advisories[0])

    def test_duration_model_and_uncooled_profile(self) -> None:
        catalog = Catalog()
        catalog.loadProfileFile(fixture("profiles", "lab_transmon.json"))
        report = runEstimate(
            workload("lab_profile"), EstimateOptions(durationModel=True, catalog=catalog)
        )
        assert report.durationSeconds is not None
        self.assertClose(report.durationSeconds, 1.2)
        self.assertClose(report.items["system"], (5000 + 2.0 * 2) * 1.2)
        self.assertEqual(report.advisories, [])
        self.assertClose(report.items["fold_1"], 114.0)

    def test_circuit_file(self) -> None:
        report = self.run_("circuit_file")
        self.assertEqual(report.metrics["fold_gate_totals"], {"1": 16, "3": 48})

    def test_classical_overhead(self) -> None:
        report = self.run_("classical_overhead")
        self.assertEqual(report.items["classical"], 3175.0)
        self.assertEqual(report.metrics["classical"]["pue_weighted_it_joules"], 3000.0)
        counters = self.run_("counter_file")
        self.assertEqual(counters.items["classical"], 2750.0)

    def test_vqe(self) -> None:
        self.assertEqual(self.run_("vqe").eTot, 9.0e7)
        self.assertClose(self.run_("vqe_qem").eTot, 8.1e9)

    def test_trapped_ion(self) -> None:
        self.assertEqual(self.run_("trapped_ion").items["fold_1"], 150.0)

    def test_ftqc(self) -> None:
        distillation = self.run_("ftqc_distillation")
        cultivation = self.run_("ftqc_cultivation")
        self.assertEqual(distillation.regime, "ftqc")
        self.assertEqual(distillation.metrics["d"], 11)
        self.assertEqual(distillation.dominantTerm(), "magic")
        self.assertClose(distillation.items["lattice"], 1500 * 1425.6)
        self.assertAlmostEqual(
            cultivation.metrics["e_ms_joules"] / distillation.metrics["e_ms_joules"], 0.1, places=12
        )
        assert distillation.durationSeconds is not None
        self.assertClose(distillation.durationSeconds, 1.1e-3)
        self.assertClose(distillation.metrics["maintenance_joules_computed"], 25e3 * 1.1e-3)

    def test_ftqc_measured_wall_time(self) -> None:
        spec = dataclasses.replace(loadWorkload(workload("ftqc_distillation")), qpuSeconds=100.0)
        with self.assertLogs("qjoules", level="WARNING"):
            report = estimateWorkload(spec)
        self.assertEqual(report.durationSeconds, 100.0)
        self.assertEqual(report.metrics["wall_seconds"], 100.0)
        self.assertClose(report.items["decoder"], 15 * 0.28 * 100.0)
        self.assertClose(report.metrics["maintenance_joules_computed"], 25e3 * 100.0)

    def test_infeasible(self) -> None:
        self.assertRaises(InfeasibleError, runEstimate, workload("above_threshold"))
        self.assertRaises(ResourceError, runEstimate, workload("missing"))


class TestSweep(Case):
    def test_parse_values(self) -> None:
        values = parseSweepValues("0, 1e3,1e6")
        self.assertEqual(values, [0, 1000, 1000000])
        self.assertTrue(all(isinstance(v, int) for v in values))
        self.assertEqual(parseSweepValues("0.5"), [0.5])
        self.assertEqual(parseSweepValues(""), [])
        self.assertRaises(ValidationError, parseSweepValues, "1,abc")
        self.assertRaises(ValidationError, parseSweepValues, "true")

    def test_t_count_crossover(self) -> None:
        with self.assertLogs("qjoules", level="WARNING"):
            rows = runSweep(workload("ftqc_distillation"), "ftqc.logical.t_count", [0, 1000, 1000000])
        self.assertEqual([row.report.dominantTerm() for row in rows], ["lattice", "magic", "magic"])
        self.assertEqual([row.value for row in rows], [0, 1000, 1000000])

    def test_shots_linear(self) -> None:
        with self.assertLogs("qjoules", level="WARNING"):
            rows = runSweep(workload("minimal_nisq"), "nisq.qem.shots", [1000, 10000, 100000])
        execs = [row.report.execJoules for row in rows]
        self.assertClose(execs[1] / execs[0], 10.0)
        self.assertClose(execs[2] / execs[1], 10.0)

    def test_parallel_keeps_order(self) -> None:
        values = [0, 1000000, 10, 100000, 1, 100]
        with self.assertLogs("qjoules", level="WARNING"):
            serial = runSweep(workload("ftqc_distillation"), "ftqc.logical.t_count", values)
            parallel = runSweep(workload("ftqc_distillation"), "ftqc.logical.t_count", values, jobs=4)
        self.assertEqual([row.value for row in parallel], values)
        self.assertEqual([r.report.eTot for r in parallel], [r.report.eTot for r in serial])

    def test_empty_and_invalid(self) -> None:
        self.assertEqual(runSweep(workload("obc"), "nisq.qem.shots", []), [])
        self.assertEqual(renderSweep("nisq.qem.shots", []), "")
        self.assertRaises(ValidationError, runSweep, workload("obc"), "nisq.qem.missing", [1])
        self.assertRaises(ValidationError, runSweep, workload("obc"), "technology", [1])
        self.assertRaises(ValidationError, runSweep, workload("obc"), "nisq.qem.shots", [1], jobs=0)
        self.assertRaises(
            ValidationError, runSweep, workload("ftqc_distillation"), "ftqc.logical.t_count", [5, -1]
        )

    def test_render(self) -> None:
        with self.assertLogs("qjoules", level="WARNING"):
            rows = runSweep(workload("ftqc_distillation"), "ftqc.logical.t_count", [0, 1000])
        machine = json.loads(renderSweep("ftqc.logical.t_count", rows, ReportFormat.MACHINE))
        self.assertEqual([row["dominant_term"] for row in machine["rows"]], ["lattice", "magic"])
        table = renderSweep("ftqc.logical.t_count", rows)
        self.assertEqual(len(table.splitlines()), 3)


class TestCli(Case):
    def run_(self, *argv: str) -> Tuple[int, str, str]:
        out, err = io.StringIO(), io.StringIO()
        with contextlib.redirect_stderr(io.StringIO()), contextlib.redirect_stdout(io.StringIO()):
            code = main(list(argv), out, err)
        return code, out.getvalue(), err.getvalue()

    def test_estimate(self) -> None:
        code, out, err = self.run_("estimate", workload("obc"))
        self.assertEqual(code, 0)
        self.assertIn("2,662,200", out)
        self.assertIn("2.686", out)
        self.assertIn("WARNING", err)

    def test_estimate_machine(self) -> None:
        code, first, _ = self.run_("estimate", workload("pbc"), "--format", "machine")
        _, second, _ = self.run_("estimate", workload("pbc"), "--format", "machine")
        self.assertEqual(code, 0)
        self.assertEqual(first, second)
        self.assertEqual(parseReport(first).eTot, 2693520e3)

    def test_exit_codes(self) -> None:
        code, out, err = self.run_("estimate", workload("above_threshold"))
        self.assertEqual((code, out), (2, ""))
        self.assertIn("above threshold", err)
        self.assertTrue(err.startswith("qjoules: error: "))

        code, out, _ = self.run_("estimate", workload("missing"))
        self.assertEqual((code, out), (3, ""))

        with tempfile.TemporaryDirectory() as folder:
            path = os.path.join(folder, "broken.json")
            with open(path, "w", encoding="utf-8") as file:
                file.write('{"name": "broken",')
            code, out, err = self.run_("estimate", path)
        self.assertEqual((code, out), (1, ""))
        self.assertIn("syntax error", err)

        self.assertEqual(self.run_()[0], 1)
        self.assertEqual(self.run_("--help")[0], 0)
        self.assertEqual(self.run_("estimate", workload("obc"), "--maintenance", "never")[0], 1)

    def test_maintenance_flag(self) -> None:
        code, out, _ = self.run_(
            "estimate", workload("obc"), "--maintenance", "include", "--format", "machine"
        )
        self.assertEqual(code, 0)
        self.assertEqual(parseReport(out).items["system"], 24.775e6)

    def test_profile_and_duration_flags(self) -> None:
        code, out, _ = self.run_(
            "estimate", workload("lab_profile"), "--profile-file",
            fixture("profiles", "lab_transmon.json"), "--duration-model", "--format", "machine",
        )
        self.assertEqual(code, 0)
        self.assertClose(parseReport(out).items["system"], (5000 + 2.0 * 2) * 1.2)
        code, _, err = self.run_("estimate", workload("lab_profile"))
        self.assertEqual(code, 1)
        self.assertIn("lab_transmon", err)

    def test_decoder_table_flag(self) -> None:
        code, out, _ = self.run_(
            "estimate", workload("ftqc_distillation"), "--decoder-table",
            fixture("decoders", "table2.csv"), "--interpolation", "exact_only", "--format", "machine",
        )
        self.assertEqual(code, 0)
        self.assertEqual(parseReport(out).metrics["d"], 11)
        code, _, err = self.run_(
            "estimate", workload("ftqc_compiled"), "--interpolation", "exact_only"
        )
        self.assertEqual(code, 2)
        self.assertIn("exact_only", err)

    def test_sweep(self) -> None:
        code, out, _ = self.run_(
            "sweep", workload("ftqc_distillation"), "--param", "ftqc.logical.t_count",
            "--values", "0,1e3,1e6", "--jobs", "3", "--format", "machine",
        )
        self.assertEqual(code, 0)
        rows = json.loads(out)["rows"]
        self.assertEqual([row["value"] for row in rows], [0, 1000, 1000000])
        self.assertEqual([row["dominant_term"] for row in rows], ["lattice", "magic", "magic"])

        code, out, _ = self.run_(
            "sweep", workload("obc"), "--param", "nisq.qem.shots", "--values", ""
        )
        self.assertEqual((code, out), (0, ""))

        code, _, err = self.run_(
            "sweep", workload("obc"), "--param", "nisq.qem.nothing", "--values", "1"
        )
        self.assertEqual(code, 1)
        self.assertIn("unknown path", err)

    def test_profiles(self) -> None:
        code, out, _ = self.run_("profiles", "list", "--profile-file", fixture("profiles", "lab_transmon.json"))
        self.assertEqual(code, 0)
        self.assertEqual([line.split()[0] for line in out.splitlines()],
                         ["superconducting", "trapped_ion", "lab_transmon"])
        code, out, _ = self.run_("profiles", "show", "superconducting")
        self.assertEqual(json.loads(out)["gate_energy"]["2q"], 0.18)
        self.assertEqual(self.run_("profiles", "show", "photonic")[0], 1)

    def test_decoders(self) -> None:
        code, out, _ = self.run_("decoders", "show")
        self.assertEqual(code, 0)
        self.assertIn("300.5", out)
        self.assertEqual(len(out.splitlines()), 9)
        code, out, _ = self.run_("decoders", "show", "--format", "machine")
        self.assertEqual(len(json.loads(out)["entries"]), 8)

    def test_speedup(self) -> None:
        code, out, _ = self.run_("speedup", "25000", "250")
        self.assertEqual((code, out), (0, "required speedup: 100x\n"))
        self.assertEqual(self.run_("speedup", "0", "250")[0], 1)


if __name__ == "__main__":
    unittest.main(verbosity=2)
