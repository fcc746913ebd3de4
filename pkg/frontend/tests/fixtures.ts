/** Captured service output for the drone protocol (compile of the sample). */

import { DoaDocument } from "../src/types.js";

export const DRONE_PROTOCOL = `typestate DroneProtocol {
    Idle = { void takeOff(): Hovering }
    Hovering = { void land(): Idle,
                 void moveTo(double, double): Flying }
    Flying = { void moveTo(double, double): Flying,
               void stop(): Hovering,
               Boolean hasArrived(): <True: Hovering, False: Flying> }
}`;

export const DRONE_DOA: DoaDocument = {
  schemaVersion: "1",
  states: [
    { name: "Idle", kind: "external", initial: true, final: false },
    { name: "Flying", kind: "external", initial: false, final: false },
    { name: "Hovering", kind: "external", initial: false, final: false },
    { name: "_C1", kind: "internal", initial: false, final: false },
    { name: "end", kind: "external", initial: false, final: true },
  ],
  methods: [
    { returnType: "Boolean", name: "hasArrived", params: [] },
    { returnType: "void", name: "land", params: [] },
    { returnType: "void", name: "moveTo", params: ["double", "double"] },
    { returnType: "void", name: "stop", params: [] },
    { returnType: "void", name: "takeOff", params: [] },
  ],
  labels: ["False", "True"],
  methodTransitions: [
    { from: "Idle", method: 4, to: "Hovering" },
    { from: "Hovering", method: 1, to: "Idle" },
    { from: "Hovering", method: 2, to: "Flying" },
    { from: "Flying", method: 2, to: "Flying" },
    { from: "Flying", method: 3, to: "Hovering" },
    { from: "Flying", method: 0, to: "_C1" },
  ],
  resultTransitions: [
    { from: "_C1", label: "True", to: "Hovering" },
    { from: "_C1", label: "False", to: "Flying" },
  ],
};

export const BASIC_DOA: DoaDocument = {
  schemaVersion: "1",
  states: [
    { name: "begin", kind: "external", initial: true, final: false },
    { name: "end", kind: "external", initial: false, final: true },
  ],
  methods: [{ returnType: "void", name: "terminate", params: [] }],
  labels: [],
  methodTransitions: [{ from: "begin", method: 0, to: "end" }],
  resultTransitions: [],
};
