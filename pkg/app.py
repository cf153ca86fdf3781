#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Flask API for OPE computations and verification campaigns
"""

from flask import Flask, jsonify, request
from flask_cors import CORS

from cli import resolve_stack
from errors import WalgError
from invred import emit_object, run_campaign
from opecore import clear_memos, coerce_field, ope, set_budget, vop_product
from reports import progress
from settings import API_MAX_RANK, CAMPAIGNS, EMITTABLE, PORT, VARIANTS, RunConfig

app = Flask(__name__)
CORS(app)


@app.after_request
def release_memos(response):
    """Engine memo tables do not outlive a request"""
    clear_memos()
    return response


def _rank_error(n: int):
    if n > API_MAX_RANK:
        return jsonify({"success": False, "error": f"n={n} exceeds the API limit of {API_MAX_RANK}"}), 400
    return None


@app.route('/health')
def health():
    """Health check endpoint"""
    return jsonify({"status": "healthy"}), 200


@app.route('/api/campaigns')
def get_campaigns():
    """Campaign names with a one-line description"""
    return jsonify({
        "campaigns": [{"name": name, "description": text} for name, text in CAMPAIGNS.items()],
        "emittable": list(EMITTABLE),
        "variants": list(VARIANTS),
    })


@app.route('/api/ope', methods=['POST'])
def compute_ope():
    """Poles of a(z) b(w) over a free-field stack"""
    data = request.json or {}
    missing = [key for key in ("a", "b", "stack") if not data.get(key)]
    if missing:
        return jsonify({"success": False, "error": f"Missing fields: {', '.join(missing)}"}), 400
    try:
        P = resolve_stack(data["stack"], API_MAX_RANK)
        a, b = coerce_field(P, data["a"]), coerce_field(P, data["b"])
        if any(e is not None for e in a.exponents() | b.exponents()):
            result = vop_product(P, a, b)
        else:
            result = ope(P, a, b)
        body = {"success": True, "poles": result.to_text()}
        if result.shift is not None:
            body["shift"] = str(result.shift)
        return jsonify(body)
    except WalgError as e:
        return jsonify({"success": False, "error": str(e)}), 400
    except Exception as e:
        return jsonify({"success": False, "error": f"Error: {str(e)}"}), 500


@app.route('/api/verify/<campaign>', methods=['POST'])
def verify(campaign):
    """Run one campaign and return its report"""
    if campaign not in CAMPAIGNS:
        return jsonify({"success": False, "error": f"Campaign '{campaign}' not found"}), 404
    try:
        data = dict(request.json or {})
        data["command"] = "verify"
        config = RunConfig.from_dict(data)
        rejected = _rank_error(config.n)
        if rejected:
            return rejected
        set_budget(config.budget)
        progress(f"📥 API request: {campaign}")
        report = run_campaign(campaign, config)
        return jsonify({"success": report.passed, "report": report.to_dict()})
    except WalgError as e:
        return jsonify({"success": False, "error": str(e)}), 400
    except Exception as e:
        return jsonify({"success": False, "error": f"Error: {str(e)}"}), 500


@app.route('/api/emit/<name>')
def emit(name):
    """Serialized screenings, tilde families, gradings and exponents"""
    if name not in EMITTABLE:
        return jsonify({"success": False, "error": f"Object '{name}' not found"}), 404
    try:
        n = int(request.args.get('n', 3))
        m = int(request.args.get('m', 4))
        variant = request.args.get('variant', 'standard')
        config = RunConfig(command="emit", n=n, m=m, variant=variant)
        rejected = _rank_error(config.n)
        if rejected:
            return rejected
        return jsonify({"success": True, "object": emit_object(name, config.n, config.m, config.variant)})
    except ValueError as e:
        return jsonify({"success": False, "error": f"Invalid parameter: {str(e)}"}), 400
    except WalgError as e:
        return jsonify({"success": False, "error": str(e)}), 400
    except Exception as e:
        return jsonify({"success": False, "error": f"Error: {str(e)}"}), 500


if __name__ == '__main__':
    app.run(host='0.0.0.0', port=PORT, debug=True)
