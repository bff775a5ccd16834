from django.test import SimpleTestCase

from hyperlab.forms import FamilyDocumentForm, SearchConfigForm, SpaceDocumentForm, SubbaseDocumentForm


class DocumentFormTests(SimpleTestCase):
    def test_space(self):
        form = SpaceDocumentForm({"document": {"points": 2, "opens": [[], [0], [0, 1]]}})
        self.assertTrue(form.is_valid(), form.errors)
        self.assertEqual(len(form.cleaned_data["space"]), 3)

    def test_space_errors(self):
        for document in ([], {"points": 0, "opens": [[]]}, {"points": 2, "opens": "all"}):
            with self.subTest(document=document):
                self.assertFalse(SpaceDocumentForm({"document": document}).is_valid())
        form = SpaceDocumentForm({"document": {"points": 2, "opens": [[0]]}})
        self.assertEqual(form.errors.get_json_data()["__all__"][0]["code"], "invalid_topology")

    def test_family(self):
        form = FamilyDocumentForm({"document": {"sets": [[1], [0, 1]]}, "points": 2})
        self.assertTrue(form.is_valid(), form.errors)
        self.assertEqual(form.cleaned_data["family"].masks, (2, 3))

    def test_family_needs_points(self):
        form = FamilyDocumentForm({"document": {"sets": [[1]]}})
        self.assertFalse(form.is_valid())
        self.assertIn("points", form.errors)

    def test_subbase(self):
        form = SubbaseDocumentForm({"document": {"subbase": [[[0]], [[0], [1]]]}, "points": 2})
        self.assertTrue(form.is_valid(), form.errors)
        self.assertEqual([f.masks for f in form.cleaned_data["subbase"]], [(1,), (1, 2)])


class SearchConfigFormTests(SimpleTestCase):
    def test_defaults(self):
        form = SearchConfigForm({"conclusion": "vietoris-type"})
        self.assertTrue(form.is_valid(), form.errors)
        config = form.cleaned_data["config"]
        self.assertEqual((config.max_points, config.family_policy), (3, "closed-only"))
        self.assertEqual(config.hypotheses, ())

    def test_options(self):
        form = SearchConfigForm(
            {
                "conclusion": "hyper-t1",
                "hypotheses": ["base-t1", "natural-family"],
                "family_policy": "fin-n",
                "family_n": 1,
                "hypertopology_policy": "random-subbase",
                "count": 3,
                "seed": 0,
            }
        )
        self.assertTrue(form.is_valid(), form.errors)
        config = form.cleaned_data["config"]
        self.assertEqual(config.hypotheses, ("base-t1", "natural-family"))
        self.assertEqual((config.seed, config.subbase_count), (0, 3))

    def test_infeasible(self):
        form = SearchConfigForm({"conclusion": "vietoris-type", "max_points": 5})
        self.assertEqual(form.errors.get_json_data()["max_points"][0]["code"], "infeasible")
        form = SearchConfigForm({"conclusion": "vietoris-type", "min_points": 2, "max_points": 1})
        self.assertEqual(form.errors.get_json_data()["__all__"][0]["code"], "infeasible")

    def test_families_need_points(self):
        form = SearchConfigForm(
            {"conclusion": "vietoris-type", "family_policy": "explicit", "families": [{"sets": [[0]]}]}
        )
        self.assertIn("families", form.errors)
