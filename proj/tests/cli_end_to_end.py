"""End-to-end checks of the subclust binary: usage: cli_end_to_end.py CLI SCHEMA_DIR"""

import json
import pathlib
import subprocess
import sys
import tempfile
import unittest

import jsonschema
import numpy as np
from referencing import Registry, Resource

CLI = ""
SCHEMAS = pathlib.Path()


def run(*args):
    return subprocess.run([CLI, *map(str, args)], capture_output=True, text=True)


def validator(name):
    registry = Registry()
    for path in SCHEMAS.glob("*.schema.json"):
        registry = registry.with_resource(path.name, Resource.from_contents(json.loads(path.read_text())))
    schema = json.loads((SCHEMAS / f"{name}.schema.json").read_text())
    return jsonschema.Draft202012Validator(schema, registry=registry)


class EndToEnd(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = pathlib.Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def synth(self, n=120, seed=3):
        data, truth = self.dir / "x.csv", self.dir / "truth.csv"
        r = run("synth", "--n", n, "--seed", seed, "--output", data, "--truth", truth)
        self.assertEqual(r.returncode, 0, r.stderr)
        return data, truth

    def fit(self, data, method, *extra):
        out = self.dir / f"{method}.json"
        r = run("fit", "--method", method, "--input", data, "--k", 3, *extra, "--output", out)
        self.assertEqual(r.returncode, 0, r.stderr)
        return json.loads(out.read_text()), out.read_text()

    def test_loss_recomputed_from_artifacts(self):
        data, _ = self.synth()
        x = np.loadtxt(data, delimiter=",")
        for method in ("fkm", "rkm"):
            res, _ = self.fit(data, method, "--q", 2, "--restarts", 10, "--seed", 7)
            validator("fit_result").validate(res)
            xc = x - np.asarray(res["center"])
            a = np.asarray(res["loading"])
            f = np.asarray(res["centroids"])
            if method == "fkm":
                d = ((xc @ a)[:, None, :] - f[None, :, :]) ** 2
            else:
                d = (xc[:, None, :] - (f @ a.T)[None, :, :]) ** 2
            d = d.sum(axis=2)
            self.assertAlmostEqual(d.min(axis=1).mean(), res["loss"], delta=1e-9 * (1 + res["loss"]))
            self.assertEqual(list(d.argmin(axis=1) + 1), res["labels"])
            self.assertTrue(np.allclose(a.T @ a, np.eye(2), atol=1e-10))

    def test_tandem_and_kmeans_results_validate(self):
        data, _ = self.synth()
        validator("fit_result").validate(self.fit(data, "tandem", "--q", 2)[0])
        km, _ = self.fit(data, "kmeans")
        validator("fit_result").validate(km)
        self.assertIsNone(km["loading"])

    def test_fit_is_deterministic(self):
        data, _ = self.synth()
        _, first = self.fit(data, "fkm", "--q", 2, "--restarts", 5, "--seed", 11)
        _, second = self.fit(data, "fkm", "--q", 2, "--restarts", 5, "--seed", 11)
        self.assertEqual(first, second)
        a = run("synth", "--n", 40, "--seed", 9).stdout
        b = run("synth", "--n", 40, "--seed", 9).stdout
        self.assertEqual(a, b)

    def test_compare_report(self):
        data, truth = self.synth(n=150)
        r = run("compare", "--input", data, "--truth", truth, "--k", 3, "--q", 2, "--restarts", 10)
        self.assertEqual(r.returncode, 0, r.stderr)
        report = json.loads(r.stdout)
        validator("compare_report").validate(report)
        self.assertEqual([m["method"] for m in report["methods"]], ["fkm", "rkm", "tandem", "kmeans"])

    def test_consistency_reports(self):
        theorem1 = {
            "kind": "theorem1",
            "population": {"type": "scenario"},
            "k": 3, "q": 2, "sample_sizes": [60, 120], "replications": 2,
            "reference_n": 600, "reference_restarts": 5, "seed": 4,
            "fit": {"restarts": 3},
        }
        slln = {
            "kind": "slln",
            "population": {"type": "discrete", "atoms": [[0, 0], [3, 1], [-2, 4]], "probs": [0.5, 0.25, 0.25]},
            "q": 1, "grid_size": 20, "sample_sizes": [100, 1000], "runs": 3, "seed": 2,
        }
        for name, cfg in (("theorem1", theorem1), ("slln", slln)):
            validator(f"{name}_config").validate(cfg)
            path = self.dir / f"{name}.json"
            path.write_text(json.dumps(cfg))
            r = run("consistency", "--config", path)
            self.assertEqual(r.returncode, 0, r.stderr)
            validator(f"{name}_report").validate(json.loads(r.stdout))
            self.assertEqual(r.stdout, run("consistency", "--config", path).stdout)

    def test_exit_codes(self):
        data, _ = self.synth(n=30)
        self.assertEqual(run("fit", "--method", "fkm", "--input", data).returncode, 2)
        self.assertEqual(run("fit", "--method", "nope", "--input", data, "--k", 2, "--q", 1).returncode, 2)
        bad = self.dir / "bad.csv"
        bad.write_text("1,2\n3\n")
        self.assertEqual(run("fit", "--method", "fkm", "--input", bad, "--k", 1, "--q", 1).returncode, 3)
        self.assertEqual(run("fit", "--method", "fkm", "--input", data, "--k", 2, "--q", 12).returncode, 4)
        self.assertEqual(run("fit", "--method", "fkm", "--input", data, "--k", 31, "--q", 1).returncode, 4)
        cfg = self.dir / "point.json"
        cfg.write_text(json.dumps({
            "kind": "theorem1",
            "population": {"type": "discrete", "atoms": [[4, 0, 0], [-4, 0, 0], [0, 5, 0]], "probs": [0.25, 0.25, 0.5]},
            "k": 3, "q": 2, "sample_sizes": [20], "replications": 1,
            "reference_n": 200, "reference_restarts": 5, "fit": {"restarts": 3, "center_columns": False},
        }))
        r = run("consistency", "--config", cfg)
        self.assertEqual(r.returncode, 5)
        self.assertTrue(r.stderr)
        junk = self.dir / "junk.json"
        junk.write_text("{")
        self.assertEqual(run("consistency", "--config", junk).returncode, 2)


if __name__ == "__main__":
    CLI, SCHEMAS = sys.argv[1], pathlib.Path(sys.argv[2])
    unittest.main(argv=sys.argv[:1], verbosity=2)
