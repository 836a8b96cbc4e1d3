# Copyright 2026 Shape Dot Grouping contributors
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl.html).
{
    "name": "Shape Dot Grouping",
    "summary": "Group sampled dots into shape boundaries by peeling a "
    "Delaunay surface, score the grouping and retrieve shapes by "
    "Fourier descriptors",
    "version": "1.1.0",
    "author": "Shape Dot Grouping contributors",
    "license": "AGPL-3",
    "category": "Computational Geometry",
    "installable": True,
    "external_dependencies": {
        "python": ["numpy>=1.15", "scipy>=1.7", "shapely>=1.8"],
    },
    "test_dependencies": ["freezegun>=1.1"],
}
